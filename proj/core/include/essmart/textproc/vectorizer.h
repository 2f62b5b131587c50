#ifndef ESSMART_TEXTPROC_VECTORIZER_H_
#define ESSMART_TEXTPROC_VECTORIZER_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "essmart/textproc/word_lists.h"

namespace essmart::text {

enum class VectorMode { kBow, kTfidf };
enum class Normalization { kNone, kStem, kLemmatize };

std::string_view to_string(VectorMode mode);
std::string_view to_string(Normalization normalization);
VectorMode vector_mode_from_string(std::string_view name);
Normalization normalization_from_string(std::string_view name);

// Lowercases, drops stopwords (matched on the lowercased surface form), then
// stems or lemmatizes.
std::vector<std::string> normalize_tokens(std::span<const std::string> tokens,
                                          Normalization normalization,
                                          const WordSet& stopwords);

// (column, value) pairs sorted by column, zeros omitted.
using SparseVector = std::vector<std::pair<std::size_t, double>>;

class VectorizerModel {
 public:
  VectorizerModel() = default;

  std::size_t width() const { return vocabulary_.size(); }
  VectorMode mode() const { return mode_; }
  Normalization normalization() const { return normalization_; }
  std::size_t num_documents() const { return num_documents_; }
  const std::map<std::string, std::size_t>& vocabulary() const { return vocabulary_; }
  const std::map<std::string, std::size_t>& document_frequency() const {
    return document_frequency_;
  }
  const WordSet& stopwords() const { return stopwords_; }

  // ln(N / df); 0 for out-of-vocabulary terms.
  double idf(const std::string& term) const;

  // bow: raw counts. tfidf: (count / document length) * idf, where the
  // length counts every input token including stopwords and OOV words.
  SparseVector transform(std::span<const std::string> document) const;
  std::vector<double> transform_dense(std::span<const std::string> document) const;

  nlohmann::json to_json() const;
  static VectorizerModel from_json(const nlohmann::json& j);

  friend VectorizerModel fit_vectorizer(
      std::span<const std::vector<std::string>> documents, VectorMode mode,
      Normalization normalization, const WordSet& stopwords);

 private:
  void index_columns();

  std::map<std::string, std::size_t> vocabulary_;
  std::map<std::string, std::size_t> document_frequency_;
  std::size_t num_documents_ = 0;
  std::vector<double> idf_by_column_;
  VectorMode mode_ = VectorMode::kTfidf;
  Normalization normalization_ = Normalization::kNone;
  WordSet stopwords_;
};

// Vocabulary columns are assigned in lexicographic term order. Throws
// EmptyCorpus when no document contributes a term.
VectorizerModel fit_vectorizer(std::span<const std::vector<std::string>> documents,
                               VectorMode mode, Normalization normalization,
                               const WordSet& stopwords);

}  // namespace essmart::text

#endif  // ESSMART_TEXTPROC_VECTORIZER_H_
