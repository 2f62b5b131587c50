#ifndef ESSMART_EXTRACTIVE_SUMMARIZERS_H_
#define ESSMART_EXTRACTIVE_SUMMARIZERS_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "essmart/corpus/types.h"
#include "essmart/learners/classifier.h"
#include "essmart/textproc/sentence.h"
#include "essmart/textproc/vectorizer.h"
#include "essmart/textproc/word_lists.h"

namespace essmart::extractive {

inline constexpr std::size_t kDefaultBudget = 5;

enum class Method { kSumBasic, kEdmundson, kLsa, kLda, kTextRank, kSupervised };

inline constexpr Method kAllMethods[] = {Method::kSumBasic, Method::kEdmundson,
                                         Method::kLsa,      Method::kLda,
                                         Method::kTextRank, Method::kSupervised};

// "sumbasic", "edmundson", "steinberger_lsa", "lda", "textrank", "supervised".
std::string_view to_string(Method method);
Method method_from_string(std::string_view name);

struct ExtractiveSummary {
  std::string request_id;
  Method method = Method::kTextRank;
  std::string model_id;                      // supervised summaries only
  std::vector<text::SentenceRecord> selected;  // document order
  std::vector<std::size_t> selected_indices;   // into the input sentences
  std::vector<double> scores;                  // one per input sentence

  // Selected sentences' lowercased tokens, concatenated.
  std::vector<std::string> tokens() const;
  std::string text() const;
  nlohmann::json to_json() const;
  static ExtractiveSummary from_json(const nlohmann::json& j);
};

// Picks the `budget` best scores, breaking ties (scores equal to ~1e-10) by
// earlier position, and returns the picks in document order.
std::vector<std::size_t> top_by_score(std::span<const double> scores, std::size_t budget);

// Lowercased tokens of a sentence that are alphanumeric words outside `stopwords`.
std::vector<std::string> content_tokens(const text::SentenceRecord& sentence,
                                        const text::WordSet& stopwords);

ExtractiveSummary sumbasic(std::span<const text::SentenceRecord> sentences,
                           std::size_t budget = kDefaultBudget,
                           const text::WordSet& stopwords = text::default_stopwords());

struct EdmundsonWeights {
  double cue = 1.0;
  double key = 1.0;
  double title = 1.0;
  double location = 1.0;
};

struct CueLexicon {
  text::WordSet bonus;
  text::WordSet stigma;
};

const CueLexicon& default_cue_lexicon();

// cue = bonus hits - stigma hits; key = hits of the ten most frequent content
// words occurring at least twice; title = distinct content words shared with
// the title; location = 1 for the first or last sentence of an utterance.
ExtractiveSummary edmundson(std::span<const text::SentenceRecord> sentences,
                            const EdmundsonWeights& weights, const CueLexicon& cues,
                            std::span<const std::string> title_tokens,
                            std::size_t budget = kDefaultBudget,
                            const text::WordSet& stopwords = text::default_stopwords());

// Term x sentence count matrix over content words; a sentence scores
// sqrt(sum_k sigma_k^2 v_ks^2) over the leading min(rank, budget) topics.
ExtractiveSummary steinberger_lsa(std::span<const text::SentenceRecord> sentences,
                                  std::size_t budget = kDefaultBudget,
                                  const text::WordSet& stopwords = text::default_stopwords());

struct LdaParams {
  std::size_t topics = 3;
  std::size_t iterations = 500;
  std::uint64_t seed = 42;
};

// Collapsed Gibbs sampling with each sentence as a document, alpha = 50/K and
// beta = 0.01. The dominant topic is the one holding the most word
// assignments; a sentence scores the mean phi of its words under that topic.
ExtractiveSummary lda_summarize(std::span<const text::SentenceRecord> sentences,
                                const LdaParams& params, std::size_t budget = kDefaultBudget,
                                const text::WordSet& stopwords = text::default_stopwords());

struct TextRankParams {
  double damping = 0.85;
  double epsilon = 1e-4;
  std::size_t max_iterations = 200;
};

struct TextRankResult {
  std::vector<std::vector<double>> similarity;
  std::vector<double> ranks;      // sums to 1
  std::vector<double> residuals;  // L1 change per iteration
};

// similarity = |shared content words| / (ln|Si| + ln|Sj|), 0 when the
// denominator is not positive. Weighted PageRank starts uniform; rows
// without outgoing weight spread their mass uniformly.
TextRankResult textrank_ranks(std::span<const text::SentenceRecord> sentences,
                              const TextRankParams& params,
                              const text::WordSet& stopwords = text::default_stopwords());

ExtractiveSummary textrank(std::span<const text::SentenceRecord> sentences,
                           const TextRankParams& params, std::size_t budget = kDefaultBudget,
                           const text::WordSet& stopwords = text::default_stopwords());

// Naive Bayes over per-sentence features: relative position, token length,
// mean tf-idf, subject overlap and speaker role.
class SentenceClassifierModel {
 public:
  static constexpr int kFeatureVersion = 1;
  static const std::vector<std::string>& feature_names();

  SentenceClassifierModel(learners::ClassifierModel classifier,
                          text::VectorizerModel vectorizer);

  const std::string& model_id() const { return model_id_; }
  const learners::ClassifierModel& classifier() const { return classifier_; }
  const text::VectorizerModel& vectorizer() const { return vectorizer_; }

  std::vector<double> features(std::span<const text::SentenceRecord> sentences,
                               std::size_t index, std::span<const std::string> subject) const;
  // Posterior probability of summary membership per sentence.
  std::vector<double> in_summary_probability(std::span<const text::SentenceRecord> sentences,
                                             std::span<const std::string> subject) const;

  nlohmann::json to_json() const;
  static SentenceClassifierModel from_json(const nlohmann::json& j);

 private:
  learners::ClassifierModel classifier_;
  text::VectorizerModel vectorizer_;
  std::string model_id_;
};

// Uses every request carrying a gold summary. Throws DegenerateLabels when
// there is no example of either class.
SentenceClassifierModel supervised_train(std::span<const corpus::UserRequest> requests,
                                         std::uint64_t seed = 42);

ExtractiveSummary supervised_summarize(const SentenceClassifierModel& model,
                                       std::span<const text::SentenceRecord> sentences,
                                       std::span<const std::string> subject,
                                       std::size_t budget = kDefaultBudget);

struct SummarizerConfig {
  Method method = Method::kTextRank;
  std::size_t budget = kDefaultBudget;
  EdmundsonWeights edmundson;
  LdaParams lda;
  TextRankParams textrank;
  std::shared_ptr<const SentenceClassifierModel> supervised;

  nlohmann::json to_json() const;  // excludes the supervised model
  static SummarizerConfig from_json(const nlohmann::json& j);
};

// Summarizes a request's conversation with the configured method; the subject
// is the Edmundson title and the supervised subject. Throws EmptyInput for a
// conversation without sentences and NotTrained for a missing supervised model.
ExtractiveSummary summarize(const corpus::UserRequest& request, const SummarizerConfig& config);

void write_summaries_jsonl(const std::string& path,
                           std::span<const ExtractiveSummary> summaries);
std::vector<ExtractiveSummary> read_summaries_jsonl(const std::string& path);

}  // namespace essmart::extractive

#endif  // ESSMART_EXTRACTIVE_SUMMARIZERS_H_
