#include "essmart/learners/dataset.h"

#include <algorithm>
#include <set>

#include "essmart/common/error.h"

namespace essmart::learners {

std::string_view to_string(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kCount: return "count";
    case FeatureKind::kContinuous: return "continuous";
    case FeatureKind::kIndicator: return "indicator";
  }
  return "continuous";
}

FeatureKind feature_kind_from_string(std::string_view name) {
  if (name == "count") return FeatureKind::kCount;
  if (name == "continuous") return FeatureKind::kContinuous;
  if (name == "indicator") return FeatureKind::kIndicator;
  throw Error(ErrorCode::kInvalidArgument, "unknown feature kind '" + std::string(name) + "'");
}

Dataset Dataset::make(std::vector<std::vector<double>> rows,
                      std::vector<std::string> labels,
                      std::vector<std::string> feature_names,
                      std::vector<FeatureKind> feature_kinds) {
  if (rows.size() != labels.size()) {
    throw Error(ErrorCode::kInvalidArgument, "rows and labels differ in length");
  }
  std::size_t width = feature_names.empty()
                          ? (rows.empty() ? feature_kinds.size() : rows.front().size())
                          : feature_names.size();
  for (const auto& row : rows) {
    if (row.size() != width) {
      throw Error(ErrorCode::kWidthMismatch, "rows must share one width");
    }
  }
  if (feature_names.empty()) {
    for (std::size_t i = 0; i < width; ++i) feature_names.push_back("f" + std::to_string(i));
  }
  if (feature_kinds.empty()) feature_kinds.assign(width, FeatureKind::kContinuous);
  if (feature_kinds.size() != width) {
    throw Error(ErrorCode::kWidthMismatch, "feature kinds do not match width");
  }
  Dataset d;
  d.rows = std::move(rows);
  d.labels = std::move(labels);
  d.feature_names = std::move(feature_names);
  d.feature_kinds = std::move(feature_kinds);
  std::set<std::string> domain(d.labels.begin(), d.labels.end());
  d.label_domain.assign(domain.begin(), domain.end());
  return d;
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  Dataset d;
  d.feature_names = feature_names;
  d.feature_kinds = feature_kinds;
  for (std::size_t i : indices) {
    d.rows.push_back(rows[i]);
    d.labels.push_back(labels[i]);
  }
  std::set<std::string> domain(d.labels.begin(), d.labels.end());
  d.label_domain.assign(domain.begin(), domain.end());
  return d;
}

std::size_t Dataset::label_index(const std::string& label) const {
  auto it = std::lower_bound(label_domain.begin(), label_domain.end(), label);
  if (it == label_domain.end() || *it != label) return label_domain.size();
  return static_cast<std::size_t>(it - label_domain.begin());
}

}  // namespace essmart::learners
