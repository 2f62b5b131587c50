#include <algorithm>
#include <cmath>

#include "essmart/common/error.h"
#include "models.h"

namespace essmart::learners {
namespace {

struct TreeParams {
  std::size_t max_depth = 0;  // 0 = unlimited
  std::size_t min_leaf = 1;
  std::size_t max_features = 1;
};

double gini(const std::vector<double>& counts, double total) {
  if (total <= 0.0) return 0.0;
  double sum_sq = 0.0;
  for (double c : counts) sum_sq += c * c;
  return 1.0 - sum_sq / (total * total);
}

class TreeBuilder {
 public:
  TreeBuilder(const Dataset& d, const std::vector<int>& labels, std::size_t num_labels,
              const TreeParams& params, Rng& rng)
      : d_(d), labels_(labels), k_(num_labels), params_(params), rng_(rng) {}

  std::vector<TreeNode> build(std::vector<std::size_t> sample) {
    nodes_.clear();
    grow(std::move(sample), 0);
    return std::move(nodes_);
  }

 private:
  int grow(std::vector<std::size_t> idx, std::size_t depth) {
    std::vector<double> counts(k_, 0.0);
    for (std::size_t i : idx) counts[labels_[i]] += 1.0;
    const int node_id = static_cast<int>(nodes_.size());
    nodes_.push_back({});
    nodes_[node_id].label = static_cast<int>(
        std::max_element(counts.begin(), counts.end()) - counts.begin());

    const bool pure = std::count_if(counts.begin(), counts.end(),
                                    [](double c) { return c > 0.0; }) <= 1;
    if (pure || (params_.max_depth > 0 && depth >= params_.max_depth) ||
        idx.size() < 2 * params_.min_leaf) {
      return node_id;
    }

    std::vector<std::size_t> features(d_.width());
    for (std::size_t f = 0; f < features.size(); ++f) features[f] = f;
    double best_impurity = 2.0;
    int best_feature = -1;
    double best_threshold = 0.0;
    std::size_t visited = 0;
    std::vector<std::pair<double, int>> column(idx.size());
    // Lazy Fisher-Yates: draw features until enough non-constant ones have
    // been examined and a valid split exists.
    for (std::size_t pos = 0; pos < features.size(); ++pos) {
      if (visited >= params_.max_features && best_feature >= 0) break;
      std::size_t pick = pos + rng_.uniform_index(features.size() - pos);
      std::swap(features[pos], features[pick]);
      const std::size_t f = features[pos];
      for (std::size_t r = 0; r < idx.size(); ++r) {
        column[r] = {d_.rows[idx[r]][f], labels_[idx[r]]};
      }
      std::sort(column.begin(), column.end());
      if (column.front().first == column.back().first) continue;
      ++visited;
      std::vector<double> left(k_, 0.0);
      std::vector<double> right = counts;
      const double total = static_cast<double>(idx.size());
      for (std::size_t r = 0; r + 1 < column.size(); ++r) {
        left[column[r].second] += 1.0;
        right[column[r].second] -= 1.0;
        if (column[r].first == column[r + 1].first) continue;
        const std::size_t n_left = r + 1;
        const std::size_t n_right = column.size() - n_left;
        if (n_left < params_.min_leaf || n_right < params_.min_leaf) continue;
        const double impurity =
            (static_cast<double>(n_left) * gini(left, static_cast<double>(n_left)) +
             static_cast<double>(n_right) * gini(right, static_cast<double>(n_right))) /
            total;
        if (impurity < best_impurity) {
          best_impurity = impurity;
          best_feature = static_cast<int>(f);
          best_threshold = 0.5 * (column[r].first + column[r + 1].first);
        }
      }
    }
    if (best_feature < 0) return node_id;

    std::vector<std::size_t> left_idx, right_idx;
    for (std::size_t i : idx) {
      (d_.rows[i][best_feature] <= best_threshold ? left_idx : right_idx).push_back(i);
    }
    idx.clear();
    idx.shrink_to_fit();
    nodes_[node_id].feature = best_feature;
    nodes_[node_id].threshold = best_threshold;
    const int left_id = grow(std::move(left_idx), depth + 1);
    const int right_id = grow(std::move(right_idx), depth + 1);
    nodes_[node_id].left = left_id;
    nodes_[node_id].right = right_id;
    return node_id;
  }

  const Dataset& d_;
  const std::vector<int>& labels_;
  std::size_t k_;
  TreeParams params_;
  Rng& rng_;
  std::vector<TreeNode> nodes_;
};

}  // namespace

RandomForestState RandomForestState::fit(const Dataset& d, const Parameters& p, Rng& rng) {
  check_known(p, {"trees", "max_depth", "min_leaf", "max_features"});
  const double trees = param_number(p, "trees", 100);
  const double max_depth = param_number(p, "max_depth", 0);
  const double min_leaf = param_number(p, "min_leaf", 1);
  if (trees < 1 || max_depth < 0 || min_leaf < 1) {
    throw Error(ErrorCode::kInvalidParameter,
                "random forest needs trees >= 1, max_depth >= 0, min_leaf >= 1");
  }
  TreeParams params;
  params.max_depth = static_cast<std::size_t>(max_depth);
  params.min_leaf = static_cast<std::size_t>(min_leaf);
  const std::size_t width = std::max<std::size_t>(d.width(), 1);
  auto mf = p.find("max_features");
  if (mf == p.end() || (std::holds_alternative<std::string>(mf->second) &&
                        std::get<std::string>(mf->second) == "sqrt")) {
    params.max_features = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(width)))));
  } else if (std::holds_alternative<std::string>(mf->second)) {
    if (std::get<std::string>(mf->second) != "all") {
      throw Error(ErrorCode::kInvalidParameter, "max_features must be sqrt, all or a count");
    }
    params.max_features = width;
  } else {
    double v = std::get<double>(mf->second);
    if (v < 1) throw Error(ErrorCode::kInvalidParameter, "max_features must be >= 1");
    params.max_features = std::min(width, static_cast<std::size_t>(v));
  }

  std::vector<int> labels(d.size());
  for (std::size_t r = 0; r < d.size(); ++r) {
    labels[r] = static_cast<int>(d.label_index(d.labels[r]));
  }
  RandomForestState s;
  for (std::size_t t = 0; t < static_cast<std::size_t>(trees); ++t) {
    Rng tree_rng = rng.fork();
    std::vector<std::size_t> sample(d.size());
    for (auto& i : sample) i = tree_rng.uniform_index(d.size());
    TreeBuilder builder(d, labels, d.label_domain.size(), params, tree_rng);
    s.trees.push_back(builder.build(std::move(sample)));
  }
  return s;
}

std::vector<double> RandomForestState::votes(std::span<const double> x,
                                             std::size_t labels) const {
  std::vector<double> v(labels, 0.0);
  for (const auto& tree : trees) {
    int node = 0;
    while (tree[node].feature >= 0) {
      node = x[tree[node].feature] <= tree[node].threshold ? tree[node].left
                                                           : tree[node].right;
    }
    v[tree[node].label] += 1.0;
  }
  for (double& c : v) c /= static_cast<double>(trees.size());
  return v;
}

nlohmann::json RandomForestState::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& tree : trees) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : tree) {
      nodes.push_back({n.feature, n.threshold, n.left, n.right, n.label});
    }
    out.push_back(std::move(nodes));
  }
  return {{"trees", out}};
}

RandomForestState RandomForestState::from_json(const nlohmann::json& j) {
  RandomForestState s;
  for (const auto& tree : j.at("trees")) {
    std::vector<TreeNode> nodes;
    for (const auto& n : tree) {
      nodes.push_back({n.at(0).get<int>(), n.at(1).get<double>(), n.at(2).get<int>(),
                       n.at(3).get<int>(), n.at(4).get<int>()});
    }
    s.trees.push_back(std::move(nodes));
  }
  return s;
}

}  // namespace essmart::learners
