#ifndef ESSMART_TICKETGEN_THESAURUS_H_
#define ESSMART_TICKETGEN_THESAURUS_H_

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "essmart/corpus/types.h"

namespace essmart::ticketgen {

enum class EntityKind { kPersonRole, kOrganization, kBrand, kProductTerm, kGeneralEntity };

std::string_view to_string(EntityKind kind);
EntityKind entity_kind_from_string(std::string_view name);

// Kind given to terms mined from a document of this kind.
EntityKind kind_for_document(corpus::DocumentKind kind);

struct ThesaurusEntry {
  std::string surface;    // as first seen
  std::string canonical;  // developer-facing form (a role for persons)
  EntityKind kind = EntityKind::kGeneralEntity;
  std::set<std::string> sources;
  bool operator==(const ThesaurusEntry&) const = default;
};

// Surface forms are keyed by their lowercased word tokens, so lookup ignores
// case, punctuation at the edges and spacing.
class Thesaurus {
 public:
  static std::string key(std::string_view surface);

  // Keeps the first canonical form of a surface and merges sources, unless
  // `replace` is set.
  void add(std::string_view surface, std::string_view canonical, EntityKind kind,
           std::string_view source, bool replace = false);

  // Surface names of `full_name` that a person entry covers: the first
  // token, the last token and the whole name (deduplicated).
  static std::vector<std::string> person_surfaces(std::string_view full_name);
  void add_person(std::string_view full_name, std::string_view role, std::string_view source);

  const ThesaurusEntry* lookup(std::string_view surface) const;
  const ThesaurusEntry* lookup_key(const std::string& key) const;
  std::size_t size() const { return entries_.size(); }
  std::size_t max_surface_tokens() const { return max_tokens_; }
  std::vector<ThesaurusEntry> entries() const;  // sorted by key

  nlohmann::json to_json() const;
  static Thesaurus from_json(const nlohmann::json& j);
  bool operator==(const Thesaurus&) const = default;

 private:
  std::map<std::string, ThesaurusEntry> entries_;
  std::size_t max_tokens_ = 0;
};

struct ThesaurusParams {
  double pmi_threshold = 2.0;  // log2
  std::size_t window = 5;
};

// Mines capitalized token runs from every document sentence and extends each
// run rightward over content words while the adjacent pair's PMI (log2,
// counted within `window` tokens) reaches the threshold. A single
// capitalized token at sentence start is not a term by itself. Person
// overrides are added last and replace mined entries. Throws EmptyDocuments
// when there are no documents.
Thesaurus build_thesaurus(std::span<const corpus::SourceDocument> documents,
                          std::span<const std::pair<std::string, std::string>> personnel,
                          const ThesaurusParams& params = {});

}  // namespace essmart::ticketgen

#endif  // ESSMART_TICKETGEN_THESAURUS_H_
