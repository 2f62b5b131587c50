#ifndef ESSMART_TICKETGEN_CONTENT_H_
#define ESSMART_TICKETGEN_CONTENT_H_

#include <optional>
#include <span>
#include <string>

#include "essmart/corpus/types.h"
#include "essmart/textproc/sentence.h"
#include "essmart/ticketgen/thesaurus.h"

namespace essmart::ticketgen {

// "a" or "an" by the first letter of `noun`.
std::string indefinite_article(std::string_view noun);

// The requester's role from person entries of the thesaurus, if any.
std::optional<std::string> requester_role(const corpus::UserRequest& request,
                                          const Thesaurus& thesaurus);

// The brand as named by the thesaurus, else the request's own brand name.
// Throws UnknownBrand when neither is available.
std::string resolve_brand(const corpus::UserRequest& request, const Thesaurus& thesaurus);

// Rewrites one sentence: person mentions become an indefinite article plus
// the role, other resolved mentions their canonical form, unresolved
// mentions are deleted, and in customer sentences I/me/we become the
// requester's role ("my" its possessive). Everything else is kept verbatim.
std::string transform_sentence(const text::SentenceRecord& sentence,
                               const Thesaurus& thesaurus,
                               const std::optional<std::string>& requester,
                               bool capitalize_start);

// Joins the transformed sentences with spaces; the first sentence is
// prefixed with "In the {brand} system; ".
std::string transform_content(std::span<const text::SentenceRecord> sentences,
                              const corpus::UserRequest& request, const Thesaurus& thesaurus);

}  // namespace essmart::ticketgen

#endif  // ESSMART_TICKETGEN_CONTENT_H_
