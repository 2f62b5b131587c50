#include <map>
#include <set>

#include "internal.h"

namespace essmart::extractive {

ExtractiveSummary sumbasic(std::span<const text::SentenceRecord> sentences, std::size_t budget,
                           const text::WordSet& stopwords) {
  require_sentences(sentences);
  std::vector<std::vector<std::string>> words;
  std::map<std::string, double> p;
  double total = 0.0;
  for (const auto& s : sentences) {
    words.push_back(content_tokens(s, stopwords));
    for (const auto& w : words.back()) {
      p[w] += 1.0;
      total += 1.0;
    }
  }
  for (auto& [w, v] : p) v /= total;

  auto score = [&](std::size_t i) {
    if (words[i].empty()) return 0.0;
    double sum = 0.0;
    for (const auto& w : words[i]) sum += p[w];
    return sum / static_cast<double>(words[i].size());
  };

  std::vector<double> scores(sentences.size());
  for (std::size_t i = 0; i < sentences.size(); ++i) scores[i] = score(i);
  std::vector<char> taken(sentences.size(), 0);
  std::vector<std::size_t> picks;
  while (picks.size() < std::min(budget, sentences.size())) {
    std::vector<double> current(sentences.size(), -1.0);
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      if (!taken[i]) current[i] = score(i);
    }
    const std::size_t best = top_by_score(current, 1).front();
    // The recorded score is the one the sentence had when it was chosen.
    scores[best] = current[best];
    taken[best] = 1;
    picks.push_back(best);
    std::set<std::string> distinct(words[best].begin(), words[best].end());
    for (const auto& w : distinct) p[w] *= p[w];
  }
  return summary_from_picks(sentences, Method::kSumBasic, std::move(scores), std::move(picks));
}

}  // namespace essmart::extractive
