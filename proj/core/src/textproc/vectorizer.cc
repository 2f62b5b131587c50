#include "essmart/textproc/vectorizer.h"

#include <cmath>
#include <set>

#include "essmart/common/error.h"
#include "essmart/common/io.h"
#include "essmart/textproc/lemmatizer.h"
#include "essmart/textproc/porter.h"

namespace essmart::text {

std::string_view to_string(VectorMode mode) {
  return mode == VectorMode::kBow ? "bow" : "tfidf";
}

std::string_view to_string(Normalization normalization) {
  switch (normalization) {
    case Normalization::kNone: return "none";
    case Normalization::kStem: return "stem";
    case Normalization::kLemmatize: return "lemmatize";
  }
  return "none";
}

VectorMode vector_mode_from_string(std::string_view name) {
  if (name == "bow") return VectorMode::kBow;
  if (name == "tfidf") return VectorMode::kTfidf;
  throw Error(ErrorCode::kInvalidParameter,
              "unknown vector mode '" + std::string(name) + "'");
}

Normalization normalization_from_string(std::string_view name) {
  if (name == "none") return Normalization::kNone;
  if (name == "stem") return Normalization::kStem;
  if (name == "lemmatize") return Normalization::kLemmatize;
  throw Error(ErrorCode::kInvalidParameter,
              "unknown normalization '" + std::string(name) + "'");
}

std::vector<std::string> normalize_tokens(std::span<const std::string> tokens,
                                          Normalization normalization,
                                          const WordSet& stopwords) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& token : tokens) {
    std::string lower = to_lower(token);
    if (stopwords.count(lower) > 0) continue;
    switch (normalization) {
      case Normalization::kNone: out.push_back(std::move(lower)); break;
      case Normalization::kStem: out.push_back(porter_stem(lower)); break;
      case Normalization::kLemmatize: out.push_back(lemmatize(lower)); break;
    }
  }
  return out;
}

VectorizerModel fit_vectorizer(std::span<const std::vector<std::string>> documents,
                               VectorMode mode, Normalization normalization,
                               const WordSet& stopwords) {
  VectorizerModel model;
  model.mode_ = mode;
  model.normalization_ = normalization;
  model.stopwords_ = stopwords;
  model.num_documents_ = documents.size();
  for (const auto& doc : documents) {
    auto terms = normalize_tokens(doc, normalization, stopwords);
    std::set<std::string> unique(terms.begin(), terms.end());
    for (const auto& term : unique) ++model.document_frequency_[term];
  }
  if (model.document_frequency_.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "no terms in any document");
  }
  model.index_columns();
  return model;
}

void VectorizerModel::index_columns() {
  vocabulary_.clear();
  idf_by_column_.clear();
  std::size_t column = 0;
  for (const auto& [term, df] : document_frequency_) {
    if (df == 0) throw Error(ErrorCode::kCorruptArtifact, "zero document frequency");
    vocabulary_[term] = column++;
    idf_by_column_.push_back(idf(term));
  }
}

double VectorizerModel::idf(const std::string& term) const {
  auto it = document_frequency_.find(term);
  if (it == document_frequency_.end()) return 0.0;
  return std::log(static_cast<double>(num_documents_) /
                  static_cast<double>(it->second));
}

SparseVector VectorizerModel::transform(std::span<const std::string> document) const {
  std::map<std::size_t, double> counts;
  for (const auto& term : normalize_tokens(document, normalization_, stopwords_)) {
    auto it = vocabulary_.find(term);
    if (it != vocabulary_.end()) counts[it->second] += 1.0;
  }
  SparseVector out;
  if (counts.empty()) return out;
  const double length = static_cast<double>(document.size());
  for (const auto& [col, count] : counts) {
    double value = count;
    if (mode_ == VectorMode::kTfidf) value = (count / length) * idf_by_column_[col];
    if (value != 0.0) out.emplace_back(col, value);
  }
  return out;
}

std::vector<double> VectorizerModel::transform_dense(
    std::span<const std::string> document) const {
  std::vector<double> dense(width(), 0.0);
  for (const auto& [col, value] : transform(document)) dense[col] = value;
  return dense;
}

nlohmann::json VectorizerModel::to_json() const {
  nlohmann::json j;
  j["mode"] = to_string(mode_);
  j["normalization"] = to_string(normalization_);
  j["num_documents"] = num_documents_;
  j["document_frequency"] = document_frequency_;
  j["stopwords"] = std::vector<std::string>(stopwords_.begin(), stopwords_.end());
  return j;
}

VectorizerModel VectorizerModel::from_json(const nlohmann::json& j) {
  VectorizerModel model;
  model.mode_ = vector_mode_from_string(j.at("mode").get<std::string>());
  model.normalization_ =
      normalization_from_string(j.at("normalization").get<std::string>());
  model.num_documents_ = j.at("num_documents").get<std::size_t>();
  model.document_frequency_ =
      j.at("document_frequency").get<std::map<std::string, std::size_t>>();
  for (const auto& w : j.at("stopwords")) model.stopwords_.insert(w.get<std::string>());
  model.index_columns();
  return model;
}

}  // namespace essmart::text
