#include "essmart/ticketgen/thesaurus.h"

#include <cctype>
#include <cmath>

#include "essmart/common/error.h"
#include "essmart/common/io.h"
#include "essmart/textproc/tokenizer.h"
#include "essmart/textproc/word_lists.h"

namespace essmart::ticketgen {
namespace {

bool is_capitalized(const std::string& token) {
  return !token.empty() && std::isupper(static_cast<unsigned char>(token[0])) && token != "I" &&
         !text::english_stopwords().contains(to_lower(token));
}

bool is_extension_word(const std::string& token) {
  if (token.empty() || text::default_stopwords().contains(to_lower(token))) return false;
  for (char c : token) {
    if (!std::isalpha(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string join(std::span<const std::string> words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

struct Cooccurrence {
  std::map<std::string, double> unigram;
  std::map<std::pair<std::string, std::string>, double> pair;
  double total = 0.0;

  double pmi(const std::string& a, const std::string& b) const {
    auto it = pair.find({a, b});
    if (it == pair.end()) return -INFINITY;
    return std::log2(it->second * total / (unigram.at(a) * unigram.at(b)));
  }
};

}  // namespace

std::string_view to_string(EntityKind kind) {
  switch (kind) {
    case EntityKind::kPersonRole: return "person_role";
    case EntityKind::kOrganization: return "organization";
    case EntityKind::kBrand: return "brand";
    case EntityKind::kProductTerm: return "product_term";
    case EntityKind::kGeneralEntity: return "general_entity";
  }
  return "general_entity";
}

EntityKind entity_kind_from_string(std::string_view name) {
  for (EntityKind k : {EntityKind::kPersonRole, EntityKind::kOrganization, EntityKind::kBrand,
                       EntityKind::kProductTerm, EntityKind::kGeneralEntity}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown entity kind " + std::string(name));
}

EntityKind kind_for_document(corpus::DocumentKind kind) {
  switch (kind) {
    case corpus::DocumentKind::kOrgDescription: return EntityKind::kOrganization;
    case corpus::DocumentKind::kBrandDescription: return EntityKind::kBrand;
    case corpus::DocumentKind::kTeamDescription: return EntityKind::kGeneralEntity;
    case corpus::DocumentKind::kUserStory:
    case corpus::DocumentKind::kReleaseNote: return EntityKind::kProductTerm;
  }
  return EntityKind::kGeneralEntity;
}

std::string Thesaurus::key(std::string_view surface) { return join(text::lower_tokens(surface)); }

void Thesaurus::add(std::string_view surface, std::string_view canonical, EntityKind kind,
                    std::string_view source, bool replace) {
  const std::string k = key(surface);
  if (k.empty()) return;
  auto it = entries_.find(k);
  if (it == entries_.end() || replace) {
    entries_[k] = {std::string(trim(surface)), std::string(canonical), kind, {}};
    it = entries_.find(k);
  }
  if (!source.empty()) it->second.sources.emplace(source);
  max_tokens_ = std::max(max_tokens_, text::word_tokens(k).size());
}

std::vector<std::string> Thesaurus::person_surfaces(std::string_view full_name) {
  auto words = text::word_tokens(full_name);
  std::vector<std::string> out;
  if (words.empty()) return out;
  for (const std::string& s : {words.front(), words.back(), join(words)}) {
    bool seen = false;
    for (const auto& o : out) seen = seen || key(o) == key(s);
    if (!seen) out.push_back(s);
  }
  return out;
}

void Thesaurus::add_person(std::string_view full_name, std::string_view role,
                           std::string_view source) {
  for (const auto& surface : person_surfaces(full_name)) {
    add(surface, role, EntityKind::kPersonRole, source, true);
  }
}

const ThesaurusEntry* Thesaurus::lookup_key(const std::string& k) const {
  auto it = entries_.find(k);
  return it == entries_.end() ? nullptr : &it->second;
}

const ThesaurusEntry* Thesaurus::lookup(std::string_view surface) const {
  return lookup_key(key(surface));
}

std::vector<ThesaurusEntry> Thesaurus::entries() const {
  std::vector<ThesaurusEntry> out;
  for (const auto& [k, e] : entries_) out.push_back(e);
  return out;
}

nlohmann::json Thesaurus::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [k, e] : entries_) {
    entries.push_back({{"surface", e.surface},
                       {"canonical", e.canonical},
                       {"kind", std::string(to_string(e.kind))},
                       {"sources", e.sources}});
  }
  return {{"entries", entries}};
}

Thesaurus Thesaurus::from_json(const nlohmann::json& j) {
  Thesaurus t;
  try {
    for (const auto& e : j.at("entries")) {
      const auto surface = e.at("surface").get<std::string>();
      const auto kind = entity_kind_from_string(e.at("kind").get<std::string>());
      t.add(surface, e.at("canonical").get<std::string>(), kind, "", true);
      for (const auto& s : e.value("sources", std::vector<std::string>{})) {
        t.add(surface, "", kind, s);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kCorruptArtifact, std::string("thesaurus: ") + e.what());
  }
  return t;
}

Thesaurus build_thesaurus(std::span<const corpus::SourceDocument> documents,
                          std::span<const std::pair<std::string, std::string>> personnel,
                          const ThesaurusParams& params) {
  if (documents.empty()) throw Error(ErrorCode::kEmptyDocuments, "no source documents");

  struct Sentence {
    std::vector<std::string> words;
    const corpus::SourceDocument* doc;
  };
  std::vector<Sentence> sentences;
  Cooccurrence stats;
  for (const auto& doc : documents) {
    for (const auto& s : text::sentence_split(doc.text)) {
      Sentence entry{s.tokens, &doc};
      for (std::size_t i = 0; i < s.normalized_tokens.size(); ++i) {
        stats.unigram[s.normalized_tokens[i]] += 1.0;
        stats.total += 1.0;
        for (std::size_t j = i + 1; j < s.normalized_tokens.size() && j - i <= params.window;
             ++j) {
          stats.pair[{s.normalized_tokens[i], s.normalized_tokens[j]}] += 1.0;
        }
      }
      sentences.push_back(std::move(entry));
    }
  }

  Thesaurus t;
  for (const auto& s : sentences) {
    const auto& w = s.words;
    std::size_t i = 0;
    while (i < w.size()) {
      if (!is_capitalized(w[i])) {
        ++i;
        continue;
      }
      std::size_t j = i + 1;
      while (j < w.size() && is_capitalized(w[j])) ++j;
      while (j < w.size() && is_extension_word(w[j]) &&
             stats.pmi(to_lower(w[j - 1]), to_lower(w[j])) >= params.pmi_threshold) {
        ++j;
      }
      if (!(i == 0 && j - i == 1)) {
        const std::string surface = join(std::span(w).subspan(i, j - i));
        t.add(surface, surface, kind_for_document(s.doc->kind), s.doc->id);
      }
      i = j;
    }
  }
  for (const auto& [name, role] : personnel) t.add_person(name, role, "personnel");
  return t;
}

}  // namespace essmart::ticketgen
