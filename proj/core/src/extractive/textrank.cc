#include <cmath>
#include <set>

#include "essmart/common/error.h"
#include "internal.h"

namespace essmart::extractive {

TextRankResult textrank_ranks(std::span<const text::SentenceRecord> sentences,
                              const TextRankParams& params, const text::WordSet& stopwords) {
  if (!(params.damping >= 0.0 && params.damping <= 1.0) || !(params.epsilon >= 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "damping must be in [0, 1], epsilon >= 0");
  }
  require_sentences(sentences);
  const std::size_t n = sentences.size();
  std::vector<std::set<std::string>> sets;
  std::vector<double> lengths;
  for (const auto& s : sentences) {
    auto words = content_tokens(s, stopwords);
    lengths.push_back(static_cast<double>(words.size()));
    sets.emplace_back(words.begin(), words.end());
  }

  TextRankResult result;
  result.similarity.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (lengths[i] == 0.0 || lengths[j] == 0.0) continue;
      const double denom = std::log(lengths[i]) + std::log(lengths[j]);
      if (denom <= 0.0) continue;
      double overlap = 0.0;
      for (const auto& w : sets[i]) overlap += sets[j].contains(w) ? 1.0 : 0.0;
      result.similarity[i][j] = result.similarity[j][i] = overlap / denom;
    }
  }

  std::vector<double> out_weight(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (double w : result.similarity[i]) out_weight[i] += w;
  }
  const double d = params.damping;
  const double uniform = 1.0 / static_cast<double>(n);
  std::vector<double> rank(n, uniform);
  std::vector<double> next(n);
  for (std::size_t iter = 0; iter < params.max_iterations; ++iter) {
    double dangling = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (out_weight[j] == 0.0) dangling += rank[j];
    }
    for (std::size_t i = 0; i < n; ++i) {
      double inflow = dangling * uniform;
      for (std::size_t j = 0; j < n; ++j) {
        if (out_weight[j] > 0.0 && result.similarity[j][i] > 0.0) {
          inflow += rank[j] * result.similarity[j][i] / out_weight[j];
        }
      }
      next[i] = (1.0 - d) * uniform + d * inflow;
    }
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) change += std::abs(next[i] - rank[i]);
    rank.swap(next);
    result.residuals.push_back(change);
    if (change < params.epsilon) break;
  }
  result.ranks = std::move(rank);
  return result;
}

ExtractiveSummary textrank(std::span<const text::SentenceRecord> sentences,
                           const TextRankParams& params, std::size_t budget,
                           const text::WordSet& stopwords) {
  TextRankResult r = textrank_ranks(sentences, params, stopwords);
  return summary_from_scores(sentences, Method::kTextRank, std::move(r.ranks), budget);
}

}  // namespace essmart::extractive
