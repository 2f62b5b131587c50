#ifndef ESSMART_TEXTPROC_NGRAMS_H_
#define ESSMART_TEXTPROC_NGRAMS_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace essmart::text {

// Multiset of word sequences: unit -> multiplicity.
using UnitCounts = std::map<std::vector<std::string>, std::size_t>;

// Maximum number of skipped words between the two members of a skip-bigram;
// nullopt means any gap.
using MaxSkip = std::optional<std::size_t>;
inline constexpr MaxSkip kUnlimitedSkip = std::nullopt;

UnitCounts ngrams(std::span<const std::string> tokens, std::size_t n);

// Ordered pairs (tokens[i], tokens[j]) with i < j and j - i - 1 <= max_skip.
UnitCounts skip_bigrams(std::span<const std::string> tokens, MaxSkip max_skip);

std::size_t total_count(const UnitCounts& units);

// Size of the multiset intersection (sum of per-unit minimum counts).
std::size_t intersection_count(const UnitCounts& a, const UnitCounts& b);

void merge_into(UnitCounts& target, const UnitCounts& source);

}  // namespace essmart::text

#endif  // ESSMART_TEXTPROC_NGRAMS_H_
