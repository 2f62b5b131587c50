#include <algorithm>
#include <map>

#include "essmart/common/error.h"
#include "essmart/common/random.h"
#include "internal.h"

namespace essmart::extractive {

ExtractiveSummary lda_summarize(std::span<const text::SentenceRecord> sentences,
                                const LdaParams& params, std::size_t budget,
                                const text::WordSet& stopwords) {
  if (params.topics == 0) throw Error(ErrorCode::kInvalidParameter, "topics must be >= 1");
  require_sentences(sentences);
  std::map<std::string, std::size_t> vocab;
  std::vector<std::vector<std::string>> raw;
  for (const auto& s : sentences) {
    raw.push_back(content_tokens(s, stopwords));
    for (const auto& w : raw.back()) vocab.emplace(w, 0);
  }
  std::size_t next = 0;
  for (auto& [w, id] : vocab) id = next++;
  std::vector<std::vector<std::size_t>> docs;
  for (const auto& words : raw) {
    std::vector<std::size_t> ids;
    for (const auto& w : words) ids.push_back(vocab[w]);
    docs.push_back(std::move(ids));
  }

  const std::size_t k = params.topics;
  const std::size_t v = vocab.size();
  const double alpha = 50.0 / static_cast<double>(k);
  const double beta = 0.01;
  std::vector<std::vector<std::size_t>> doc_topic(docs.size(), std::vector<std::size_t>(k, 0));
  std::vector<std::vector<std::size_t>> topic_word(k, std::vector<std::size_t>(v, 0));
  std::vector<std::size_t> topic_total(k, 0);
  std::vector<std::vector<std::size_t>> z(docs.size());
  Rng rng(params.seed);
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (std::size_t w : docs[d]) {
      std::size_t t = rng.uniform_index(k);
      z[d].push_back(t);
      ++doc_topic[d][t];
      ++topic_word[t][w];
      ++topic_total[t];
    }
  }
  std::vector<double> weight(k);
  const double vbeta = static_cast<double>(v) * beta;
  for (std::size_t iter = 0; iter < params.iterations; ++iter) {
    for (std::size_t d = 0; d < docs.size(); ++d) {
      for (std::size_t i = 0; i < docs[d].size(); ++i) {
        const std::size_t w = docs[d][i];
        std::size_t t = z[d][i];
        --doc_topic[d][t];
        --topic_word[t][w];
        --topic_total[t];
        double total = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
          total += (static_cast<double>(doc_topic[d][c]) + alpha) *
                   (static_cast<double>(topic_word[c][w]) + beta) /
                   (static_cast<double>(topic_total[c]) + vbeta);
          weight[c] = total;
        }
        const double u = rng.uniform01() * total;
        t = static_cast<std::size_t>(std::upper_bound(weight.begin(), weight.end(), u) -
                                     weight.begin());
        t = std::min(t, k - 1);
        z[d][i] = t;
        ++doc_topic[d][t];
        ++topic_word[t][w];
        ++topic_total[t];
      }
    }
  }

  const std::size_t dominant = static_cast<std::size_t>(
      std::max_element(topic_total.begin(), topic_total.end()) - topic_total.begin());
  std::vector<double> scores(sentences.size(), 0.0);
  for (std::size_t d = 0; d < docs.size(); ++d) {
    if (docs[d].empty()) continue;
    double sum = 0.0;
    for (std::size_t w : docs[d]) {
      sum += (static_cast<double>(topic_word[dominant][w]) + beta) /
             (static_cast<double>(topic_total[dominant]) + vbeta);
    }
    scores[d] = sum / static_cast<double>(docs[d].size());
  }
  return summary_from_scores(sentences, Method::kLda, std::move(scores), budget);
}

}  // namespace essmart::extractive
