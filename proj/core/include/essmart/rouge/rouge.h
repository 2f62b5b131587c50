#ifndef ESSMART_ROUGE_ROUGE_H_
#define ESSMART_ROUGE_ROUGE_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "essmart/textproc/ngrams.h"

namespace essmart::rouge {

struct Variant {
  enum class Kind { kRougeN, kRougeSu };
  Kind kind = Kind::kRougeSu;
  std::size_t n = 1;                           // rouge_n only
  text::MaxSkip max_skip = text::kUnlimitedSkip;  // rouge_su only

  static Variant rouge_n(std::size_t n) { return {Kind::kRougeN, n, text::kUnlimitedSkip}; }
  static Variant rouge_su(text::MaxSkip max_skip = text::kUnlimitedSkip) {
    return {Kind::kRougeSu, 0, max_skip};
  }
  bool operator==(const Variant&) const = default;
};

// "rouge_1", "rouge_2", ..., "rouge_su" (unlimited) and "rouge_su4" style.
std::string to_string(const Variant& variant);
Variant variant_from_string(std::string_view name);

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  Variant variant;
  std::size_t p_common = 0;
  std::size_t q_reference = 0;
  std::size_t candidate_units = 0;

  nlohmann::json to_json() const;
};

// Precision/recall/F1 over the multiset intersection of two unit multisets.
RougeScore score_units(const text::UnitCounts& candidate, const text::UnitCounts& reference,
                       const Variant& variant);

RougeScore rouge_n(std::span<const std::string> candidate,
                   std::span<const std::string> reference, std::size_t n);

// Units are skip-bigrams within max_skip plus unigrams.
RougeScore rouge_su(std::span<const std::string> candidate,
                    std::span<const std::string> reference,
                    text::MaxSkip max_skip = text::kUnlimitedSkip);

RougeScore score(std::span<const std::string> candidate,
                 std::span<const std::string> reference, const Variant& variant);

// One method's summaries as normalized token lists keyed by request id.
struct MethodSummaries {
  std::string method;
  std::map<std::string, std::vector<std::string>> by_request;
};

struct ComparisonMatrix {
  std::vector<std::string> methods;
  std::map<std::pair<std::string, std::string>, double> cells;  // (candidate, reference)
  Variant variant;

  std::optional<double> cell(const std::string& candidate, const std::string& reference) const;
  std::string to_csv() const;
  std::string to_text() const;
  nlohmann::json to_json() const;
};

// cell(row, col) = mean F1 of row-method summaries against col-method
// summaries as reference. Throws InvalidArgument for fewer than two methods
// and CoverageMismatch when request sets differ.
ComparisonMatrix pairwise_matrix(std::span<const MethodSummaries> summaries,
                                 const Variant& variant);

struct MethodScore {
  std::string method;
  RougeScore mean;  // mean precision, recall and F1; summed counts
};

// Every method must cover exactly the gold request set.
std::vector<MethodScore> score_against_gold(
    std::span<const MethodSummaries> summaries,
    const std::map<std::string, std::vector<std::string>>& golds, const Variant& variant);

std::string gold_scores_csv(std::span<const MethodScore> scores);
std::string gold_scores_text(std::span<const MethodScore> scores);
nlohmann::json gold_scores_json(std::span<const MethodScore> scores);

}  // namespace essmart::rouge

#endif  // ESSMART_ROUGE_ROUGE_H_
