#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "essmart/common/error.h"
#include "essmart/common/io.h"
#include "internal.h"

namespace essmart::extractive {
namespace {

constexpr std::size_t kKeyWords = 10;

}  // namespace

const CueLexicon& default_cue_lexicon() {
  static const CueLexicon lexicon{text::default_cue_bonus_words(),
                                  text::default_cue_stigma_words()};
  return lexicon;
}

ExtractiveSummary edmundson(std::span<const text::SentenceRecord> sentences,
                            const EdmundsonWeights& weights, const CueLexicon& cues,
                            std::span<const std::string> title_tokens, std::size_t budget,
                            const text::WordSet& stopwords) {
  for (double w : {weights.cue, weights.key, weights.title, weights.location}) {
    if (!std::isfinite(w)) {
      throw Error(ErrorCode::kInvalidParameter, "edmundson weights must be finite");
    }
  }
  require_sentences(sentences);

  std::vector<std::vector<std::string>> words;
  std::map<std::string, std::size_t> freq;
  for (const auto& s : sentences) {
    words.push_back(content_tokens(s, stopwords));
    for (const auto& w : words.back()) ++freq[w];
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(freq.begin(), freq.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::set<std::string> key;
  for (const auto& [w, c] : ranked) {
    if (key.size() == kKeyWords || c < 2) break;
    key.insert(w);
  }

  std::set<std::string> title;
  for (const auto& t : title_tokens) {
    std::string lower = to_lower(t);
    if (!stopwords.contains(lower)) title.insert(std::move(lower));
  }

  std::vector<double> scores(sentences.size());
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    double cue = 0.0;
    for (const auto& t : sentences[i].normalized_tokens) {
      if (cues.bonus.contains(t)) cue += 1.0;
      if (cues.stigma.contains(t)) cue -= 1.0;
    }
    double key_hits = 0.0;
    for (const auto& w : words[i]) key_hits += key.contains(w) ? 1.0 : 0.0;
    std::set<std::string> distinct(words[i].begin(), words[i].end());
    double title_hits = 0.0;
    for (const auto& w : distinct) title_hits += title.contains(w) ? 1.0 : 0.0;
    const int utterance = sentences[i].origin.utterance;
    const bool first = i == 0 || sentences[i - 1].origin.utterance != utterance;
    const bool last =
        i + 1 == sentences.size() || sentences[i + 1].origin.utterance != utterance;
    const double location = first || last ? 1.0 : 0.0;
    scores[i] = weights.cue * cue + weights.key * key_hits + weights.title * title_hits +
                weights.location * location;
  }
  return summary_from_scores(sentences, Method::kEdmundson, std::move(scores), budget);
}

}  // namespace essmart::extractive
