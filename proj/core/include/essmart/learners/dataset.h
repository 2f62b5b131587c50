#ifndef ESSMART_LEARNERS_DATASET_H_
#define ESSMART_LEARNERS_DATASET_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace essmart::learners {

// How Naive Bayes models a column. Other learners treat every column as a
// real number.
enum class FeatureKind {
  kCount,       // non-negative term weight (multinomial)
  kContinuous,  // Gaussian
  kIndicator,   // 0/1 one-hot member (Bernoulli)
};

std::string_view to_string(FeatureKind kind);
FeatureKind feature_kind_from_string(std::string_view name);

struct Dataset {
  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;
  std::vector<std::string> feature_names;
  std::vector<FeatureKind> feature_kinds;
  std::vector<std::string> label_domain;  // sorted, unique

  std::size_t size() const { return rows.size(); }
  std::size_t width() const { return feature_names.size(); }

  // Fills missing names ("f0", "f1", ...) and kinds (continuous), computes the
  // label domain and checks uniform width.
  static Dataset make(std::vector<std::vector<double>> rows,
                      std::vector<std::string> labels,
                      std::vector<std::string> feature_names = {},
                      std::vector<FeatureKind> feature_kinds = {});

  Dataset subset(std::span<const std::size_t> indices) const;

  // Index of `label` in label_domain, or label_domain.size() if absent.
  std::size_t label_index(const std::string& label) const;
};

}  // namespace essmart::learners

#endif  // ESSMART_LEARNERS_DATASET_H_
