#include "essmart/textproc/ngrams.h"

#include <algorithm>

#include "essmart/common/error.h"

namespace essmart::text {

UnitCounts ngrams(std::span<const std::string> tokens, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "n-gram order must be >= 1");
  UnitCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + n)];
  }
  return counts;
}

UnitCounts skip_bigrams(std::span<const std::string> tokens, MaxSkip max_skip) {
  UnitCounts counts;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::size_t last = tokens.size();
    if (max_skip) last = std::min(last, i + *max_skip + 2);
    for (std::size_t j = i + 1; j < last; ++j) {
      ++counts[{tokens[i], tokens[j]}];
    }
  }
  return counts;
}

std::size_t total_count(const UnitCounts& units) {
  std::size_t total = 0;
  for (const auto& [unit, count] : units) total += count;
  return total;
}

std::size_t intersection_count(const UnitCounts& a, const UnitCounts& b) {
  const UnitCounts& small = a.size() <= b.size() ? a : b;
  const UnitCounts& large = a.size() <= b.size() ? b : a;
  std::size_t common = 0;
  for (const auto& [unit, count] : small) {
    auto it = large.find(unit);
    if (it != large.end()) common += std::min(count, it->second);
  }
  return common;
}

void merge_into(UnitCounts& target, const UnitCounts& source) {
  for (const auto& [unit, count] : source) target[unit] += count;
}

}  // namespace essmart::text
