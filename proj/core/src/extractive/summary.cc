#include <algorithm>
#include <cmath>

#include "essmart/common/error.h"
#include "essmart/common/io.h"
#include "essmart/textproc/tokenizer.h"
#include "internal.h"

namespace essmart::extractive {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kSumBasic: return "sumbasic";
    case Method::kEdmundson: return "edmundson";
    case Method::kLsa: return "steinberger_lsa";
    case Method::kLda: return "lda";
    case Method::kTextRank: return "textrank";
    case Method::kSupervised: return "supervised";
  }
  return "unknown";
}

Method method_from_string(std::string_view name) {
  for (Method m : kAllMethods) {
    if (to_string(m) == name) return m;
  }
  if (name == "lsa") return Method::kLsa;
  throw Error(ErrorCode::kInvalidArgument, "unknown summarization method " + std::string(name));
}

void require_sentences(std::span<const text::SentenceRecord> sentences) {
  if (sentences.empty()) throw Error(ErrorCode::kEmptyInput, "no sentences to summarize");
}

std::vector<std::size_t> top_by_score(std::span<const double> scores, std::size_t budget) {
  // Quantizing keeps the ordering a strict weak order while letting scores
  // that differ only by rounding noise fall back to position.
  auto key = [](double s) { return std::isfinite(s) ? std::round(s * 1e10) : s; };
  std::vector<std::size_t> order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return key(scores[a]) > key(scores[b]);
  });
  order.resize(std::min(budget, order.size()));
  std::sort(order.begin(), order.end());
  return order;
}

std::vector<std::string> content_tokens(const text::SentenceRecord& sentence,
                                        const text::WordSet& stopwords) {
  std::vector<std::string> out;
  for (const auto& t : sentence.normalized_tokens) {
    bool wordlike = std::any_of(t.begin(), t.end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || static_cast<unsigned char>(c) >= 0x80;
    });
    if (wordlike && !stopwords.contains(t)) out.push_back(t);
  }
  return out;
}

ExtractiveSummary summary_from_picks(std::span<const text::SentenceRecord> sentences,
                                     Method method, std::vector<double> scores,
                                     std::vector<std::size_t> picks) {
  std::sort(picks.begin(), picks.end());
  ExtractiveSummary out;
  out.method = method;
  for (std::size_t i : picks) out.selected.push_back(sentences[i]);
  out.selected_indices = std::move(picks);
  out.scores = std::move(scores);
  return out;
}

ExtractiveSummary summary_from_scores(std::span<const text::SentenceRecord> sentences,
                                      Method method, std::vector<double> scores,
                                      std::size_t budget) {
  auto picks = top_by_score(scores, budget);
  return summary_from_picks(sentences, method, std::move(scores), std::move(picks));
}

std::vector<std::string> ExtractiveSummary::tokens() const {
  std::vector<std::string> out;
  for (const auto& s : selected) {
    out.insert(out.end(), s.normalized_tokens.begin(), s.normalized_tokens.end());
  }
  return out;
}

std::string ExtractiveSummary::text() const {
  std::string out;
  for (const auto& s : selected) {
    if (!out.empty()) out.push_back(' ');
    out += s.text;
  }
  return out;
}

nlohmann::json ExtractiveSummary::to_json() const {
  nlohmann::json sentences = nlohmann::json::array();
  for (std::size_t i = 0; i < selected.size(); ++i) {
    const std::size_t index = selected_indices[i];
    sentences.push_back({{"origin", {selected[i].origin.utterance, selected[i].origin.sentence}},
                         {"index", index},
                         {"speaker", std::string(essmart::to_string(selected[i].speaker))},
                         {"text", selected[i].text},
                         {"score", index < scores.size() ? scores[index] : 0.0}});
  }
  nlohmann::json out = {{"request_id", request_id},
                        {"method", std::string(extractive::to_string(method))},
                        {"sentences", sentences},
                        {"scores", scores}};
  if (!model_id.empty()) out["model_id"] = model_id;
  return out;
}

ExtractiveSummary ExtractiveSummary::from_json(const nlohmann::json& j) {
  try {
    ExtractiveSummary out;
    out.request_id = j.at("request_id").get<std::string>();
    out.method = method_from_string(j.at("method").get<std::string>());
    out.model_id = j.value("model_id", std::string());
    out.scores = j.value("scores", std::vector<double>{});
    for (const auto& s : j.at("sentences")) {
      text::SentenceOrigin origin{s.at("origin").at(0).get<int>(), s.at("origin").at(1).get<int>()};
      SpeakerRole speaker = speaker_role_from_string(s.value("speaker", std::string("customer")));
      out.selected.push_back(text::make_sentence(s.at("text").get<std::string>(), origin, speaker));
      out.selected_indices.push_back(s.value("index", out.selected_indices.size()));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedRecord, std::string("summary record: ") + e.what());
  }
}

void write_summaries_jsonl(const std::string& path,
                           std::span<const ExtractiveSummary> summaries) {
  std::string out;
  for (const auto& s : summaries) out += s.to_json().dump() + '\n';
  write_file(path, out);
}

std::vector<ExtractiveSummary> read_summaries_jsonl(const std::string& path) {
  std::vector<ExtractiveSummary> out;
  const std::string contents = read_file(path);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < contents.size()) {
    std::size_t end = contents.find('\n', pos);
    if (end == std::string::npos) end = contents.size();
    std::string_view line = trim(std::string_view(contents).substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kMalformedRecord,
                  "line " + std::to_string(line_no) + ": " + e.what());
    }
    out.push_back(ExtractiveSummary::from_json(j));
  }
  return out;
}

}  // namespace essmart::extractive
