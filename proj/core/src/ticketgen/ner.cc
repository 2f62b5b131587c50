#include "essmart/ticketgen/ner.h"

#include <algorithm>
#include <cctype>

#include "essmart/common/io.h"
#include "essmart/textproc/tokenizer.h"
#include "essmart/textproc/word_lists.h"

namespace essmart::ticketgen {
namespace {

bool is_email(std::string_view t) {
  const auto at = t.find('@');
  if (at == std::string_view::npos || at == 0 || t.find('@', at + 1) != std::string_view::npos) {
    return false;
  }
  const auto domain = t.substr(at + 1);
  const auto dot = domain.rfind('.');
  if (dot == std::string_view::npos || dot == 0 || domain.size() - dot - 1 < 2) return false;
  return std::all_of(domain.begin() + static_cast<std::ptrdiff_t>(dot) + 1, domain.end(),
                     [](char c) { return std::isalpha(static_cast<unsigned char>(c)); });
}

bool is_phone_piece(std::string_view t) {
  bool digit = false;
  for (char c : t) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digit = true;
    } else if (c != '-' && c != '.' && c != '(' && c != ')' && c != '+') {
      return false;
    }
  }
  return digit;
}

std::size_t digit_count(std::string_view t) {
  return static_cast<std::size_t>(
      std::count_if(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }));
}

bool is_name_like(const std::string& t) {
  if (t.empty() || !std::isupper(static_cast<unsigned char>(t[0])) || t == "I") return false;
  if (text::english_stopwords().contains(to_lower(t))) return false;
  // Acronyms such as product names stay untouched.
  bool all_upper = t.size() > 1 && std::all_of(t.begin(), t.end(), [](char c) {
                     return !std::isalpha(static_cast<unsigned char>(c)) ||
                            std::isupper(static_cast<unsigned char>(c));
                   });
  return !all_upper;
}

int source_rank(MentionSource s) { return s == MentionSource::kGazetteer ? 0 : 1; }

}  // namespace

std::string_view to_string(MentionSource source) {
  switch (source) {
    case MentionSource::kGazetteer: return "gazetteer";
    case MentionSource::kCapitalized: return "capitalized";
    case MentionSource::kEmail: return "email";
    case MentionSource::kPhone: return "phone";
  }
  return "gazetteer";
}

std::vector<EntityMention> ner_detect(const text::SentenceRecord& sentence,
                                      const Thesaurus& thesaurus) {
  const auto tokens = text::tokenize(sentence.text);
  const std::size_t n = tokens.size();
  std::vector<std::string> lower;
  for (const auto& t : tokens) lower.push_back(to_lower(t.text));

  std::vector<EntityMention> candidates;
  auto add = [&](std::size_t b, std::size_t e, MentionSource source, const ThesaurusEntry* entry) {
    EntityMention m;
    m.begin = b;
    m.end = e;
    m.surface = sentence.text.substr(tokens[b].begin, tokens[e - 1].end - tokens[b].begin);
    m.source = source;
    if (entry) {
      m.kind = entry->kind;
      m.canonical = entry->canonical;
    }
    candidates.push_back(std::move(m));
  };

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t longest = std::min(thesaurus.max_surface_tokens(), n - i);
    std::string key;
    std::vector<std::string> keys;
    for (std::size_t len = 1; len <= longest; ++len) {
      if (len > 1) key.push_back(' ');
      key += lower[i + len - 1];
      keys.push_back(key);
    }
    for (std::size_t len = longest; len >= 1; --len) {
      if (const ThesaurusEntry* e = thesaurus.lookup_key(keys[len - 1])) {
        add(i, i + len, MentionSource::kGazetteer, e);
        break;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (is_email(tokens[i].text)) add(i, i + 1, MentionSource::kEmail, nullptr);
  }
  for (std::size_t i = 0; i < n;) {
    if (!is_phone_piece(tokens[i].text)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    std::size_t digits = 0;
    while (j < n && is_phone_piece(tokens[j].text)) digits += digit_count(tokens[j++].text);
    if (digits >= 7 && digits <= 15) add(i, j, MentionSource::kPhone, nullptr);
    i = j;
  }
  // The first token is capitalized by convention, so runs start after it.
  for (std::size_t i = 1; i < n;) {
    if (!is_name_like(tokens[i].text)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && is_name_like(tokens[j].text)) ++j;
    add(i, j, MentionSource::kCapitalized, nullptr);
    i = j;
  }

  std::stable_sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
    if (a.end - a.begin != b.end - b.begin) return a.end - a.begin > b.end - b.begin;
    if (a.begin != b.begin) return a.begin < b.begin;
    return source_rank(a.source) < source_rank(b.source);
  });
  std::vector<char> taken(n, 0);
  std::vector<EntityMention> out;
  for (auto& c : candidates) {
    if (std::any_of(taken.begin() + static_cast<std::ptrdiff_t>(c.begin),
                    taken.begin() + static_cast<std::ptrdiff_t>(c.end), [](char t) { return t; })) {
      continue;
    }
    std::fill(taken.begin() + static_cast<std::ptrdiff_t>(c.begin),
              taken.begin() + static_cast<std::ptrdiff_t>(c.end), 1);
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.begin < b.begin; });
  return out;
}

}  // namespace essmart::ticketgen
