#include <cmath>
#include <map>

#include <Eigen/SVD>

#include "internal.h"

namespace essmart::extractive {

ExtractiveSummary steinberger_lsa(std::span<const text::SentenceRecord> sentences,
                                  std::size_t budget, const text::WordSet& stopwords) {
  require_sentences(sentences);
  std::map<std::string, Eigen::Index> rows;
  std::vector<std::vector<std::string>> words;
  for (const auto& s : sentences) {
    words.push_back(content_tokens(s, stopwords));
    for (const auto& w : words.back()) rows.emplace(w, 0);
  }
  Eigen::Index next = 0;
  for (auto& [w, r] : rows) r = next++;

  const auto n = static_cast<Eigen::Index>(sentences.size());
  std::vector<double> scores(sentences.size(), 0.0);
  if (rows.empty()) {
    return summary_from_scores(sentences, Method::kLsa, std::move(scores), budget);
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), n);
  for (Eigen::Index s = 0; s < n; ++s) {
    for (const auto& w : words[s]) a(rows[w], s) += 1.0;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const Eigen::MatrixXd& v = svd.matrixV();
  const double tolerance = sigma.size() > 0 ? sigma(0) * 1e-10 : 0.0;
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > tolerance) ++rank;
  const Eigen::Index topics = std::min<Eigen::Index>(rank, static_cast<Eigen::Index>(budget));
  for (Eigen::Index s = 0; s < n; ++s) {
    double sum = 0.0;
    for (Eigen::Index k = 0; k < topics; ++k) {
      const double term = sigma(k) * v(s, k);
      sum += term * term;
    }
    scores[s] = std::sqrt(sum);
  }
  return summary_from_scores(sentences, Method::kLsa, std::move(scores), budget);
}

}  // namespace essmart::extractive
