#include "essmart/rouge/rouge.h"

#include <charconv>
#include <cstdio>
#include <set>

#include "essmart/common/error.h"

namespace essmart::rouge {
namespace {

text::UnitCounts su_units(std::span<const std::string> tokens, text::MaxSkip max_skip) {
  text::UnitCounts units = text::skip_bigrams(tokens, max_skip);
  text::merge_into(units, text::ngrams(tokens, 1));
  return units;
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string full(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::set<std::string> request_ids(const MethodSummaries& m) {
  std::set<std::string> ids;
  for (const auto& [id, tokens] : m.by_request) ids.insert(id);
  return ids;
}

}  // namespace

std::string to_string(const Variant& variant) {
  if (variant.kind == Variant::Kind::kRougeN) return "rouge_" + std::to_string(variant.n);
  if (!variant.max_skip) return "rouge_su";
  return "rouge_su" + std::to_string(*variant.max_skip);
}

Variant variant_from_string(std::string_view name) {
  auto number = [&](std::string_view digits) -> std::optional<std::size_t> {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
      return std::nullopt;
    }
    return v;
  };
  if (name == "rouge_su") return Variant::rouge_su();
  if (name.starts_with("rouge_su")) {
    if (auto v = number(name.substr(8))) return Variant::rouge_su(*v);
  } else if (name.starts_with("rouge_")) {
    if (auto v = number(name.substr(6)); v && *v > 0) return Variant::rouge_n(*v);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown ROUGE variant " + std::string(name));
}

RougeScore score_units(const text::UnitCounts& candidate, const text::UnitCounts& reference,
                       const Variant& variant) {
  RougeScore s;
  s.variant = variant;
  s.p_common = text::intersection_count(candidate, reference);
  s.q_reference = text::total_count(reference);
  s.candidate_units = text::total_count(candidate);
  if (s.q_reference == 0) {
    s.p_common = 0;
    return s;
  }
  s.recall = static_cast<double>(s.p_common) / static_cast<double>(s.q_reference);
  s.precision = s.candidate_units > 0 ? static_cast<double>(s.p_common) /
                                            static_cast<double>(s.candidate_units)
                                      : 0.0;
  s.f1 = s.precision + s.recall > 0.0
             ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
             : 0.0;
  return s;
}

RougeScore rouge_n(std::span<const std::string> candidate,
                   std::span<const std::string> reference, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidParameter, "ROUGE-n needs n >= 1");
  return score_units(text::ngrams(candidate, n), text::ngrams(reference, n),
                     Variant::rouge_n(n));
}

RougeScore rouge_su(std::span<const std::string> candidate,
                    std::span<const std::string> reference, text::MaxSkip max_skip) {
  return score_units(su_units(candidate, max_skip), su_units(reference, max_skip),
                     Variant::rouge_su(max_skip));
}

RougeScore score(std::span<const std::string> candidate,
                 std::span<const std::string> reference, const Variant& variant) {
  if (variant.kind == Variant::Kind::kRougeN) return rouge_n(candidate, reference, variant.n);
  return rouge_su(candidate, reference, variant.max_skip);
}

nlohmann::json RougeScore::to_json() const {
  return {{"variant", to_string(variant)}, {"precision", precision},
          {"recall", recall},              {"f1", f1},
          {"p_common", p_common},          {"q_reference", q_reference}};
}

std::optional<double> ComparisonMatrix::cell(const std::string& candidate,
                                             const std::string& reference) const {
  auto it = cells.find({candidate, reference});
  if (it == cells.end()) return std::nullopt;
  return it->second;
}

ComparisonMatrix pairwise_matrix(std::span<const MethodSummaries> summaries,
                                 const Variant& variant) {
  if (summaries.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "pairwise comparison needs at least two methods");
  }
  const auto ids = request_ids(summaries.front());
  for (const auto& m : summaries) {
    if (request_ids(m) != ids) {
      throw Error(ErrorCode::kCoverageMismatch,
                  "method " + m.method + " covers a different request set than " +
                      summaries.front().method);
    }
  }
  ComparisonMatrix matrix;
  matrix.variant = variant;
  for (const auto& m : summaries) matrix.methods.push_back(m.method);
  for (const auto& row : summaries) {
    for (const auto& col : summaries) {
      if (&row == &col) continue;
      double sum = 0.0;
      for (const auto& id : ids) {
        sum += score(row.by_request.at(id), col.by_request.at(id), variant).f1;
      }
      matrix.cells[{row.method, col.method}] =
          ids.empty() ? 0.0 : sum / static_cast<double>(ids.size());
    }
  }
  return matrix;
}

std::string ComparisonMatrix::to_csv() const {
  std::string out = "method";
  for (const auto& m : methods) out += ',' + csv_field(m);
  out += '\n';
  for (const auto& row : methods) {
    out += csv_field(row);
    for (const auto& col : methods) {
      out += ',';
      if (auto v = cell(row, col)) out += full(*v);
    }
    out += '\n';
  }
  return out;
}

std::string ComparisonMatrix::to_text() const {
  std::size_t width = 6;
  for (const auto& m : methods) width = std::max(width, m.size());
  auto pad = [&](const std::string& s) { return s + std::string(width + 2 - s.size(), ' '); };
  std::string out = pad("");
  for (const auto& m : methods) out += pad(m);
  out += '\n';
  for (const auto& row : methods) {
    out += pad(row);
    for (const auto& col : methods) {
      auto v = cell(row, col);
      out += pad(v ? fixed2(*v) : "-");
    }
    out += '\n';
  }
  return out;
}

nlohmann::json ComparisonMatrix::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : methods) {
    nlohmann::json values = nlohmann::json::array();
    for (const auto& col : methods) {
      auto v = cell(row, col);
      values.push_back(v ? nlohmann::json(*v) : nlohmann::json(nullptr));
    }
    rows.push_back(std::move(values));
  }
  return {{"variant", to_string(variant)}, {"methods", methods}, {"f1", rows}};
}

std::vector<MethodScore> score_against_gold(
    std::span<const MethodSummaries> summaries,
    const std::map<std::string, std::vector<std::string>>& golds, const Variant& variant) {
  std::set<std::string> ids;
  for (const auto& [id, tokens] : golds) ids.insert(id);
  std::vector<MethodScore> out;
  for (const auto& m : summaries) {
    if (request_ids(m) != ids) {
      throw Error(ErrorCode::kCoverageMismatch,
                  "method " + m.method + " does not cover exactly the gold request set");
    }
    MethodScore ms{m.method, {}};
    ms.mean.variant = variant;
    for (const auto& id : ids) {
      RougeScore s = score(m.by_request.at(id), golds.at(id), variant);
      ms.mean.precision += s.precision;
      ms.mean.recall += s.recall;
      ms.mean.f1 += s.f1;
      ms.mean.p_common += s.p_common;
      ms.mean.q_reference += s.q_reference;
      ms.mean.candidate_units += s.candidate_units;
    }
    if (!ids.empty()) {
      const double n = static_cast<double>(ids.size());
      ms.mean.precision /= n;
      ms.mean.recall /= n;
      ms.mean.f1 /= n;
    }
    out.push_back(std::move(ms));
  }
  return out;
}

std::string gold_scores_csv(std::span<const MethodScore> scores) {
  std::string out = "method,precision,recall,f1\n";
  for (const auto& s : scores) {
    out += csv_field(s.method) + ',' + full(s.mean.precision) + ',' + full(s.mean.recall) + ',' +
           full(s.mean.f1) + '\n';
  }
  return out;
}

std::string gold_scores_text(std::span<const MethodScore> scores) {
  std::size_t width = 6;
  for (const auto& s : scores) width = std::max(width, s.method.size());
  auto pad = [&](const std::string& s, std::size_t w) {
    return s + std::string(w > s.size() ? w - s.size() : 0, ' ');
  };
  std::string out = pad("method", width + 2) + pad("P", 7) + pad("R", 7) + "F1\n";
  for (const auto& s : scores) {
    out += pad(s.method, width + 2) + pad(fixed2(s.mean.precision), 7) +
           pad(fixed2(s.mean.recall), 7) + fixed2(s.mean.f1) + '\n';
  }
  return out;
}

nlohmann::json gold_scores_json(std::span<const MethodScore> scores) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : scores) {
    nlohmann::json j = s.mean.to_json();
    j["method"] = s.method;
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace essmart::rouge
