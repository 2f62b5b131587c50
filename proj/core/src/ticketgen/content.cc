#include "essmart/ticketgen/content.h"

#include <algorithm>
#include <cctype>

#include "essmart/common/error.h"
#include "essmart/common/io.h"
#include "essmart/textproc/tokenizer.h"
#include "essmart/ticketgen/ner.h"

namespace essmart::ticketgen {
namespace {

struct Edit {
  std::size_t begin;
  std::size_t end;
  std::string replacement;  // empty = delete
};

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::string indefinite_article(std::string_view noun) {
  if (noun.empty()) return "a";
  const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(noun.front())));
  return std::string_view("aeiou").find(c) != std::string_view::npos ? "an" : "a";
}

std::optional<std::string> requester_role(const corpus::UserRequest& request,
                                          const Thesaurus& thesaurus) {
  const ThesaurusEntry* e = thesaurus.lookup(request.requester);
  if (e && e->kind == EntityKind::kPersonRole) return e->canonical;
  return std::nullopt;
}

std::string resolve_brand(const corpus::UserRequest& request, const Thesaurus& thesaurus) {
  const std::string_view brand = trim(request.brand_name);
  if (brand.empty()) {
    throw Error(ErrorCode::kUnknownBrand, "request " + request.id + " names no brand");
  }
  const ThesaurusEntry* e = thesaurus.lookup(brand);
  if (e && e->kind == EntityKind::kBrand) return e->canonical;
  return std::string(brand);
}

std::string transform_sentence(const text::SentenceRecord& sentence,
                               const Thesaurus& thesaurus,
                               const std::optional<std::string>& requester,
                               bool capitalize_start) {
  const auto tokens = text::tokenize(sentence.text);
  const auto mentions = ner_detect(sentence, thesaurus);
  std::vector<char> covered(tokens.size(), 0);
  std::vector<Edit> edits;
  auto role_phrase = [](const std::string& role) {
    return indefinite_article(role) + " " + role;
  };
  for (const auto& m : mentions) {
    std::fill(covered.begin() + static_cast<std::ptrdiff_t>(m.begin),
              covered.begin() + static_cast<std::ptrdiff_t>(m.end), 1);
    std::string replacement;
    if (m.kind == EntityKind::kPersonRole) {
      replacement = role_phrase(m.canonical);
    } else if (m.kind) {
      replacement = m.canonical;
    }
    edits.push_back({tokens[m.begin].begin, tokens[m.end - 1].end, std::move(replacement)});
  }
  if (requester && sentence.speaker == SpeakerRole::kCustomer) {
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (covered[i]) continue;
      const std::string lower = to_lower(tokens[i].text);
      if (lower == "i" || lower == "me" || lower == "we") {
        edits.push_back({tokens[i].begin, tokens[i].end, role_phrase(*requester)});
      } else if (lower == "my") {
        edits.push_back({tokens[i].begin, tokens[i].end, role_phrase(*requester) + "'s"});
      }
    }
  }
  std::sort(edits.begin(), edits.end(), [](const Edit& a, const Edit& b) { return a.begin > b.begin; });

  std::string out = sentence.text;
  const std::size_t first_word = tokens.empty() ? 0 : tokens.front().begin;
  for (const Edit& e : edits) {
    if (!e.replacement.empty()) {
      std::string r = e.replacement;
      if (capitalize_start && e.begin == first_word) {
        r[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(r[0])));
      }
      out.replace(e.begin, e.end - e.begin, r);
      continue;
    }
    // Deleting also drops one neighbouring whitespace run so no double
    // spaces remain: the following run, or the preceding one at the end.
    std::size_t b = e.begin;
    std::size_t end = e.end;
    if (end < out.size() && is_space(out[end])) {
      while (end < out.size() && is_space(out[end])) ++end;
    } else {
      while (b > 0 && is_space(out[b - 1])) --b;
    }
    out.erase(b, end - b);
  }
  return std::string(trim(out));
}

std::string transform_content(std::span<const text::SentenceRecord> sentences,
                              const corpus::UserRequest& request, const Thesaurus& thesaurus) {
  const std::string brand = resolve_brand(request, thesaurus);
  const auto requester = requester_role(request, thesaurus);
  std::string out = "In the " + brand + " system;";
  bool first = true;
  for (const auto& s : sentences) {
    std::string t = transform_sentence(s, thesaurus, requester, !first);
    first = false;
    if (t.empty()) continue;
    out += ' ';
    out += t;
  }
  return out;
}

}  // namespace essmart::ticketgen
