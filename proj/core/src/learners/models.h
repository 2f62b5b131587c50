#ifndef ESSMART_SRC_LEARNERS_MODELS_H_
#define ESSMART_SRC_LEARNERS_MODELS_H_

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "essmart/common/random.h"
#include "essmart/learners/classifier.h"

namespace essmart::learners {

// Parameter lookup with defaults; throws InvalidParameter on type mismatch.
double param_number(const Parameters& p, const std::string& name, double fallback);
std::string param_string(const Parameters& p, const std::string& name,
                         const std::string& fallback);
void check_known(const Parameters& p, std::initializer_list<const char*> names);

// Hybrid Naive Bayes: multinomial over count columns, Gaussian over
// continuous columns, Bernoulli over indicator columns. Columns constant over
// the training rows carry no information and are skipped entirely.
struct NaiveBayesState {
  std::vector<double> log_prior;                 // [label]
  std::vector<std::size_t> count_cols;
  std::vector<std::vector<double>> log_theta;    // [label][count col]
  std::vector<std::size_t> gaussian_cols;
  std::vector<std::vector<double>> mean, var;    // [label][gaussian col]
  std::vector<std::size_t> indicator_cols;
  std::vector<std::vector<double>> log_p1, log_p0;  // [label][indicator col]

  static NaiveBayesState fit(const Dataset& d, const Parameters& p);
  std::vector<double> posterior(std::span<const double> x) const;
  nlohmann::json to_json() const;
  static NaiveBayesState from_json(const nlohmann::json& j);
};

// One-vs-rest (a single machine for two labels) trained with Pegasos.
// Linear machines keep a weight vector with the bias as a final entry; RBF
// machines keep support rows and dual coefficients.
struct SvmState {
  bool rbf = false;
  double gamma = 0.0;
  std::vector<std::vector<double>> weights;  // [machine][width + 1]
  std::vector<std::vector<double>> support;  // rbf: support rows
  std::vector<std::vector<double>> coef;     // rbf: [machine][support]
  std::vector<double> bias;                  // rbf: [machine]

  static SvmState fit(const Dataset& d, const Parameters& p, Rng& rng);
  std::vector<double> decision(std::span<const double> x) const;
  nlohmann::json to_json() const;
  static SvmState from_json(const nlohmann::json& j);
};

struct TreeNode {
  int feature = -1;  // -1 for leaves
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  int label = 0;  // majority label at this node
};

struct RandomForestState {
  std::vector<std::vector<TreeNode>> trees;

  static RandomForestState fit(const Dataset& d, const Parameters& p, Rng& rng);
  std::vector<double> votes(std::span<const double> x, std::size_t labels) const;
  nlohmann::json to_json() const;
  static RandomForestState from_json(const nlohmann::json& j);
};

class FittedState {
 public:
  Family family;
  Parameters parameters;
  std::vector<std::string> feature_names;
  std::vector<FeatureKind> feature_kinds;
  std::vector<std::string> label_domain;
  std::uint64_t seed = 0;
  std::variant<NaiveBayesState, SvmState, RandomForestState> state;
};

}  // namespace essmart::learners

#endif  // ESSMART_SRC_LEARNERS_MODELS_H_
