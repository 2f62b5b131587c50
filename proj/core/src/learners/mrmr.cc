#include "essmart/learners/mrmr.h"

#include <algorithm>
#include <cmath>
#include <map>

namespace essmart::learners {
namespace {

constexpr double kTieTolerance = 1e-12;

}  // namespace

std::vector<int> discretize(std::span<const double> values, std::size_t bins) {
  bins = std::max<std::size_t>(bins, 1);
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> distinct = sorted;
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  std::vector<int> codes(values.size());
  if (distinct.size() <= bins) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      codes[i] = static_cast<int>(
          std::lower_bound(distinct.begin(), distinct.end(), values[i]) - distinct.begin());
    }
    return codes;
  }
  // The bin of a value is fixed by the rank of its first occurrence, so tied
  // values always land together.
  const double n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto rank = std::lower_bound(sorted.begin(), sorted.end(), values[i]) - sorted.begin();
    codes[i] = static_cast<int>(
        std::floor(static_cast<double>(rank) * static_cast<double>(bins) / n));
  }
  return codes;
}

double mutual_information(std::span<const int> x, std::span<const int> y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n == 0) return 0.0;
  std::map<std::pair<int, int>, double> joint;
  std::map<int, double> px, py;
  for (std::size_t i = 0; i < n; ++i) {
    joint[{x[i], y[i]}] += 1.0;
    px[x[i]] += 1.0;
    py[y[i]] += 1.0;
  }
  const double total = static_cast<double>(n);
  double mi = 0.0;
  for (const auto& [key, count] : joint) {
    mi += count / total * std::log(count * total / (px[key.first] * py[key.second]));
  }
  return std::max(mi, 0.0);
}

std::vector<MrmrStep> mrmr_select(const Dataset& dataset, std::size_t k, std::size_t bins) {
  const std::size_t width = dataset.width();
  k = std::min(k, width);
  std::vector<int> label(dataset.size());
  for (std::size_t r = 0; r < dataset.size(); ++r) {
    label[r] = static_cast<int>(dataset.label_index(dataset.labels[r]));
  }
  std::vector<std::vector<int>> codes(width);
  std::vector<double> relevance(width);
  std::vector<double> column(dataset.size());
  for (std::size_t f = 0; f < width; ++f) {
    for (std::size_t r = 0; r < dataset.size(); ++r) column[r] = dataset.rows[r][f];
    codes[f] = discretize(column, bins);
    relevance[f] = mutual_information(codes[f], label);
  }

  std::vector<MrmrStep> out;
  std::vector<char> chosen(width, 0);
  std::vector<double> redundancy_sum(width, 0.0);
  while (out.size() < k) {
    MrmrStep best;
    bool found = false;
    for (std::size_t f = 0; f < width; ++f) {
      if (chosen[f]) continue;
      const double redundancy =
          out.empty() ? 0.0 : redundancy_sum[f] / static_cast<double>(out.size());
      const double score = relevance[f] - redundancy;
      if (!found || score > best.score + kTieTolerance) {
        best = {f, relevance[f], redundancy, score};
        found = true;
      }
    }
    chosen[best.feature] = 1;
    out.push_back(best);
    for (std::size_t f = 0; f < width; ++f) {
      if (!chosen[f]) redundancy_sum[f] += mutual_information(codes[f], codes[best.feature]);
    }
  }
  return out;
}

}  // namespace essmart::learners
