#ifndef ESSMART_LEARNERS_CLASSIFIER_H_
#define ESSMART_LEARNERS_CLASSIFIER_H_

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "essmart/learners/dataset.h"

namespace essmart::learners {

enum class Family { kNaiveBayes, kSvm, kRandomForest };

std::string_view to_string(Family family);
Family family_from_string(std::string_view name);  // "nb", "svm", "rf" or long names

using ParamValue = std::variant<double, std::string>;
using Parameters = std::map<std::string, ParamValue>;

std::string to_string(const ParamValue& value);
std::string to_string(const Parameters& params);

struct Prediction {
  std::string label;
  double confidence = 0.0;  // in [0, 1]
};

class FittedState;

// Immutable fitted classifier; cheap to copy (shared state).
//
// Parameters by family (defaults in brackets):
//   naive_bayes:   alpha [1.0], var_smoothing [1e-9]
//   svm:           C [1.0], kernel {linear, rbf} [linear], gamma {scale, x}
//                  [scale], epochs [50]
//   random_forest: trees [100], max_depth (0 = unlimited) [0], min_leaf [1],
//                  max_features {sqrt, all, n} [sqrt]
//
// Confidence is the NB posterior, logistic(decision value) for SVM (a
// squashing, not a calibrated probability) and the vote fraction for RF.
class ClassifierModel {
 public:
  static constexpr int kFormatVersion = 1;

  Family family() const;
  const Parameters& parameters() const;
  const std::vector<std::string>& feature_names() const;
  const std::vector<FeatureKind>& feature_kinds() const;
  const std::vector<std::string>& label_domain() const;
  std::uint64_t seed() const;
  std::size_t width() const { return feature_names().size(); }

  Prediction predict(std::span<const double> features) const;

  // Per-label scores aligned with label_domain(): NB posteriors, RF vote
  // fractions, SVM squashed decision values.
  std::vector<double> scores(std::span<const double> features) const;

  nlohmann::json to_json() const;
  static ClassifierModel from_json(const nlohmann::json& j);

  explicit ClassifierModel(std::shared_ptr<const FittedState> state);

 private:
  std::shared_ptr<const FittedState> state_;
};

// Throws SingleClass for fewer than two labels and InvalidParameter for bad
// parameter names or values.
ClassifierModel train(Family family, const Dataset& dataset,
                      const Parameters& parameters, std::uint64_t seed);

Prediction predict(const ClassifierModel& model, std::span<const double> features);

}  // namespace essmart::learners

#endif  // ESSMART_LEARNERS_CLASSIFIER_H_
