#ifndef ESSMART_SRC_EXTRACTIVE_INTERNAL_H_
#define ESSMART_SRC_EXTRACTIVE_INTERNAL_H_

#include <span>
#include <vector>

#include "essmart/extractive/summarizers.h"

namespace essmart::extractive {

void require_sentences(std::span<const text::SentenceRecord> sentences);

// Fills selected/selected_indices from `scores` with the shared tie rule.
ExtractiveSummary summary_from_scores(std::span<const text::SentenceRecord> sentences,
                                      Method method, std::vector<double> scores,
                                      std::size_t budget);

ExtractiveSummary summary_from_picks(std::span<const text::SentenceRecord> sentences,
                                     Method method, std::vector<double> scores,
                                     std::vector<std::size_t> picks);

}  // namespace essmart::extractive

#endif  // ESSMART_SRC_EXTRACTIVE_INTERNAL_H_
