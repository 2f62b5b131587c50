#include "essmart/textproc/lemmatizer.h"

#include <sstream>

#include "essmart/common/error.h"
#include "essmart/common/io.h"
#include "../common/embedded_data.h"

namespace essmart::text {
namespace {

using ExceptionTable = std::map<std::string, std::string, std::less<>>;

ExceptionTable parse_exceptions(std::string_view contents) {
  ExceptionTable table;
  for (const auto& line : parse_list(contents)) {
    std::istringstream in(line);
    std::string form, lemma;
    if (!(in >> form >> lemma)) {
      throw Error(ErrorCode::kMalformedRecord,
                  "lemma exception line needs '<form> <lemma>': " + line);
    }
    table[to_lower(form)] = to_lower(lemma);
  }
  return table;
}

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool is_consonant_at(std::string_view w, std::size_t i) {
  if (is_vowel(w[i])) return false;
  if (w[i] == 'y') return i == 0 || !is_consonant_at(w, i - 1);
  return true;
}

bool has_vowel(std::string_view w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!is_consonant_at(w, i)) return true;
  }
  return false;
}

int measure(std::string_view w) {
  int m = 0;
  std::size_t i = 0;
  while (i < w.size() && is_consonant_at(w, i)) ++i;
  while (i < w.size()) {
    while (i < w.size() && !is_consonant_at(w, i)) ++i;
    if (i >= w.size()) break;
    while (i < w.size() && is_consonant_at(w, i)) ++i;
    ++m;
  }
  return m;
}

bool ends_cvc(std::string_view w) {
  std::size_t n = w.size();
  if (n < 3) return false;
  char last = w[n - 1];
  return is_consonant_at(w, n - 3) && !is_consonant_at(w, n - 2) &&
         is_consonant_at(w, n - 1) && last != 'w' && last != 'x' &&
         last != 'y';
}

bool ends_with(std::string_view w, std::string_view s) {
  return w.size() >= s.size() && w.substr(w.size() - s.size()) == s;
}

// Restores the base after stripping -ing/-ed: e-restoration for at/bl/iz,
// endings English words never stop on (v, c, u, dg, rg, vowel + s) and
// short CVC stems; consonant undoubling except l/s/z/f.
std::string repair_verb_stem(std::string stem) {
  if (ends_with(stem, "at") || ends_with(stem, "bl") || ends_with(stem, "iz")) {
    return stem + "e";
  }
  const char last = stem.back();
  if (last == 'v' || last == 'c' || last == 'u' || ends_with(stem, "dg") ||
      ends_with(stem, "rg")) {
    return stem + "e";
  }
  if (last == 's' && stem.size() >= 2 && is_vowel(stem[stem.size() - 2]) &&
      !(ends_with(stem, "us") && stem.size() > 4)) {
    return stem + "e";
  }
  std::size_t n = stem.size();
  if (n >= 2 && stem[n - 1] == stem[n - 2] && is_consonant_at(stem, n - 1)) {
    char c = stem[n - 1];
    if (c != 'l' && c != 's' && c != 'z' && c != 'f') stem.pop_back();
    return stem;
  }
  if (measure(stem) == 1 && ends_cvc(stem)) return stem + "e";
  return stem;
}

std::optional<std::string> verb_rules(std::string_view w) {
  if (w.size() > 4 && ends_with(w, "ied")) {
    return std::string(w.substr(0, w.size() - 3)) + "y";
  }
  // "need", "proceed", "speed": the e of -eed belongs to the stem.
  if (ends_with(w, "eed")) return std::nullopt;
  for (std::string_view suffix : {std::string_view("ing"), std::string_view("ed")}) {
    if (!ends_with(w, suffix) || w.size() < suffix.size() + 2) continue;
    std::string_view stem = w.substr(0, w.size() - suffix.size());
    if (!has_vowel(stem)) continue;
    return repair_verb_stem(std::string(stem));
  }
  return std::nullopt;
}

std::optional<std::string> noun_rules(std::string_view w) {
  if (w.size() > 4 && ends_with(w, "ies")) {
    return std::string(w.substr(0, w.size() - 3)) + "y";
  }
  if (ends_with(w, "sses")) return std::string(w.substr(0, w.size() - 2));
  for (std::string_view sib : {"ches", "shes", "xes", "zes"}) {
    if (ends_with(w, sib) && w.size() > sib.size()) {
      return std::string(w.substr(0, w.size() - 2));
    }
  }
  if (w.size() > 3 && ends_with(w, "s") && !ends_with(w, "ss") &&
      !ends_with(w, "us") && !ends_with(w, "is")) {
    return std::string(w.substr(0, w.size() - 1));
  }
  return std::nullopt;
}

bool is_lower_alpha(std::string_view w) {
  for (char c : w) {
    if (c < 'a' || c > 'z') return false;
  }
  return !w.empty();
}

}  // namespace

Lemmatizer::Lemmatizer() : Lemmatizer(parse_exceptions(data::kLemmaExceptions)) {}

Lemmatizer::Lemmatizer(ExceptionTable exceptions)
    : exceptions_(std::move(exceptions)) {
  for (const auto& [form, lemma] : exceptions_) lemmas_.insert(lemma);
}

Lemmatizer Lemmatizer::from_file(const std::filesystem::path& path) {
  return Lemmatizer(parse_exceptions(read_file(path)));
}

std::string Lemmatizer::lemmatize(std::string_view token,
                                  std::optional<PosHint> pos) const {
  std::string w = to_lower(token);
  if (auto it = exceptions_.find(w); it != exceptions_.end()) return it->second;
  if (!is_lower_alpha(w) || pos == PosHint::kAdjective) return w;
  // Rules are reapplied until nothing changes ("warnings" -> "warning" ->
  // "warn") so that a lemma maps to itself. Every rule shortens the word,
  // which bounds the loop.
  while (true) {
    // A word that is itself an exception target is already a lemma.
    if (lemmas_.count(w) > 0) return w;
    std::optional<std::string> next;
    if (pos != PosHint::kNoun) next = verb_rules(w);
    if (!next && (pos != PosHint::kVerb || ends_with(w, "s"))) next = noun_rules(w);
    if (!next || *next == w) return w;
    if (auto it = exceptions_.find(*next); it != exceptions_.end()) return it->second;
    w = std::move(*next);
  }
}

const Lemmatizer& default_lemmatizer() {
  static const Lemmatizer lemmatizer;
  return lemmatizer;
}

std::string lemmatize(std::string_view token, std::optional<PosHint> pos) {
  return default_lemmatizer().lemmatize(token, pos);
}

}  // namespace essmart::text
