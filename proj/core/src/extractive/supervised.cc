#include <set>

#include "essmart/common/error.h"
#include "essmart/common/io.h"
#include "essmart/textproc/tokenizer.h"
#include "internal.h"

namespace essmart::extractive {
namespace {

const std::string kIn = "1";

double mean_tfidf(const text::VectorizerModel& vectorizer, const text::SentenceRecord& s) {
  text::SparseVector v = vectorizer.transform(s.normalized_tokens);
  if (v.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& [col, value] : v) sum += value;
  return sum / static_cast<double>(v.size());
}

std::vector<std::string> subject_tokens(const corpus::UserRequest& r) {
  return text::lower_tokens(r.subject);
}

std::vector<double> sentence_features(const text::VectorizerModel& vectorizer,
                                      std::span<const text::SentenceRecord> sentences,
                                      std::size_t index,
                                      std::span<const std::string> subject) {
  const auto& s = sentences[index];
  const double position =
      sentences.size() > 1
          ? static_cast<double>(index) / static_cast<double>(sentences.size() - 1)
          : 0.0;
  std::set<std::string> subject_words;
  for (const auto& t : subject) {
    std::string lower = to_lower(t);
    if (!vectorizer.stopwords().contains(lower)) subject_words.insert(std::move(lower));
  }
  std::set<std::string> words;
  for (const auto& w : content_tokens(s, vectorizer.stopwords())) words.insert(w);
  double overlap = 0.0;
  for (const auto& w : words) overlap += subject_words.contains(w) ? 1.0 : 0.0;
  return {position, static_cast<double>(s.tokens.size()), mean_tfidf(vectorizer, s), overlap,
          s.speaker == SpeakerRole::kCrmStaff ? 1.0 : 0.0};
}

}  // namespace

const std::vector<std::string>& SentenceClassifierModel::feature_names() {
  static const std::vector<std::string> names{"relative_position", "token_length",
                                              "mean_tfidf", "subject_overlap",
                                              "speaker_crm_staff"};
  return names;
}

SentenceClassifierModel::SentenceClassifierModel(learners::ClassifierModel classifier,
                                                 text::VectorizerModel vectorizer)
    : classifier_(std::move(classifier)), vectorizer_(std::move(vectorizer)) {
  model_id_ = hex64(fnv1a64(classifier_.to_json().dump() + vectorizer_.to_json().dump()));
}

std::vector<double> SentenceClassifierModel::features(
    std::span<const text::SentenceRecord> sentences, std::size_t index,
    std::span<const std::string> subject) const {
  return sentence_features(vectorizer_, sentences, index, subject);
}

std::vector<double> SentenceClassifierModel::in_summary_probability(
    std::span<const text::SentenceRecord> sentences, std::span<const std::string> subject) const {
  const std::size_t positive =
      static_cast<std::size_t>(std::find(classifier_.label_domain().begin(),
                                         classifier_.label_domain().end(), kIn) -
                               classifier_.label_domain().begin());
  std::vector<double> out;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    out.push_back(classifier_.scores(features(sentences, i, subject))[positive]);
  }
  return out;
}

nlohmann::json SentenceClassifierModel::to_json() const {
  return {{"feature_version", kFeatureVersion},
          {"features", feature_names()},
          {"classifier", classifier_.to_json()},
          {"vectorizer", vectorizer_.to_json()}};
}

SentenceClassifierModel SentenceClassifierModel::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("feature_version")) {
    throw Error(ErrorCode::kCorruptArtifact, "sentence model lacks feature_version");
  }
  if (j.at("feature_version").get<int>() != kFeatureVersion) {
    throw Error(ErrorCode::kVersionMismatch, "unsupported sentence model feature_version");
  }
  try {
    return SentenceClassifierModel(learners::ClassifierModel::from_json(j.at("classifier")),
                                   text::VectorizerModel::from_json(j.at("vectorizer")));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kCorruptArtifact, std::string("sentence model: ") + e.what());
  }
}

SentenceClassifierModel supervised_train(std::span<const corpus::UserRequest> requests,
                                         std::uint64_t seed) {
  struct Example {
    std::vector<text::SentenceRecord> sentences;
    std::vector<std::string> subject;
    std::set<text::SentenceOrigin> gold;
  };
  std::vector<Example> examples;
  std::vector<std::vector<std::string>> documents;
  for (const auto& r : requests) {
    if (!r.gold_summary) continue;
    Example e{corpus::conversation_sentences(r), subject_tokens(r),
              {r.gold_summary->begin(), r.gold_summary->end()}};
    for (const auto& s : e.sentences) documents.push_back(s.normalized_tokens);
    examples.push_back(std::move(e));
  }
  if (documents.empty()) {
    throw Error(ErrorCode::kDegenerateLabels, "no sentences with gold summary labels");
  }
  text::VectorizerModel vectorizer;
  try {
    vectorizer = text::fit_vectorizer(documents, text::VectorMode::kTfidf,
                                      text::Normalization::kNone, text::default_stopwords());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kEmptyCorpus) throw;
    throw Error(ErrorCode::kDegenerateLabels, "gold-summary sentences carry no content words");
  }

  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;
  const auto& names = SentenceClassifierModel::feature_names();
  std::vector<learners::FeatureKind> kinds(names.size(), learners::FeatureKind::kContinuous);
  kinds.back() = learners::FeatureKind::kIndicator;
  std::set<std::string> seen;
  for (const auto& e : examples) {
    for (const auto& s : e.sentences) seen.insert(e.gold.contains(s.origin) ? "1" : "0");
  }
  if (seen.size() < 2) {
    throw Error(ErrorCode::kDegenerateLabels, "gold summaries must include and exclude sentences");
  }
  for (const auto& e : examples) {
    for (std::size_t i = 0; i < e.sentences.size(); ++i) {
      rows.push_back(sentence_features(vectorizer, e.sentences, i, e.subject));
      labels.push_back(e.gold.contains(e.sentences[i].origin) ? "1" : "0");
    }
  }
  auto dataset = learners::Dataset::make(std::move(rows), std::move(labels), names, kinds);
  return SentenceClassifierModel(
      learners::train(learners::Family::kNaiveBayes, dataset, {}, seed), std::move(vectorizer));
}

ExtractiveSummary supervised_summarize(const SentenceClassifierModel& model,
                                       std::span<const text::SentenceRecord> sentences,
                                       std::span<const std::string> subject, std::size_t budget) {
  require_sentences(sentences);
  ExtractiveSummary out = summary_from_scores(
      sentences, Method::kSupervised, model.in_summary_probability(sentences, subject), budget);
  out.model_id = model.model_id();
  return out;
}

}  // namespace essmart::extractive
