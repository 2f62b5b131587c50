#include "essmart/common/error.h"
#include "essmart/textproc/tokenizer.h"
#include "internal.h"

namespace essmart::extractive {

ExtractiveSummary summarize(const corpus::UserRequest& request, const SummarizerConfig& config) {
  const auto sentences = corpus::conversation_sentences(request);
  if (sentences.empty()) {
    throw Error(ErrorCode::kEmptyInput, "request " + request.id + " has no sentences");
  }
  const auto subject = text::lower_tokens(request.subject);
  ExtractiveSummary out;
  switch (config.method) {
    case Method::kSumBasic:
      out = sumbasic(sentences, config.budget);
      break;
    case Method::kEdmundson:
      out = edmundson(sentences, config.edmundson, default_cue_lexicon(), subject, config.budget);
      break;
    case Method::kLsa:
      out = steinberger_lsa(sentences, config.budget);
      break;
    case Method::kLda:
      out = lda_summarize(sentences, config.lda, config.budget);
      break;
    case Method::kTextRank:
      out = textrank(sentences, config.textrank, config.budget);
      break;
    case Method::kSupervised:
      if (!config.supervised) {
        throw Error(ErrorCode::kNotTrained, "supervised summarizer has no trained model");
      }
      out = supervised_summarize(*config.supervised, sentences, subject, config.budget);
      break;
  }
  out.request_id = request.id;
  return out;
}

nlohmann::json SummarizerConfig::to_json() const {
  return {{"method", std::string(extractive::to_string(method))},
          {"budget", budget},
          {"edmundson",
           {{"cue", edmundson.cue},
            {"key", edmundson.key},
            {"title", edmundson.title},
            {"location", edmundson.location}}},
          {"lda", {{"topics", lda.topics}, {"iterations", lda.iterations}, {"seed", lda.seed}}},
          {"textrank",
           {{"damping", textrank.damping},
            {"epsilon", textrank.epsilon},
            {"max_iterations", textrank.max_iterations}}}};
}

SummarizerConfig SummarizerConfig::from_json(const nlohmann::json& j) {
  SummarizerConfig c;
  try {
    if (j.contains("method")) c.method = method_from_string(j.at("method").get<std::string>());
    c.budget = j.value("budget", c.budget);
    if (j.contains("edmundson")) {
      const auto& e = j.at("edmundson");
      c.edmundson.cue = e.value("cue", c.edmundson.cue);
      c.edmundson.key = e.value("key", c.edmundson.key);
      c.edmundson.title = e.value("title", c.edmundson.title);
      c.edmundson.location = e.value("location", c.edmundson.location);
    }
    if (j.contains("lda")) {
      const auto& l = j.at("lda");
      c.lda.topics = l.value("topics", c.lda.topics);
      c.lda.iterations = l.value("iterations", c.lda.iterations);
      c.lda.seed = l.value("seed", c.lda.seed);
    }
    if (j.contains("textrank")) {
      const auto& t = j.at("textrank");
      c.textrank.damping = t.value("damping", c.textrank.damping);
      c.textrank.epsilon = t.value("epsilon", c.textrank.epsilon);
      c.textrank.max_iterations = t.value("max_iterations", c.textrank.max_iterations);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("summarizer config: ") + e.what());
  }
  return c;
}

}  // namespace essmart::extractive
