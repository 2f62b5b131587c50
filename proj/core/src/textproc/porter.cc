#include "essmart/textproc/porter.h"

#include <algorithm>
#include <array>

namespace essmart::text {
namespace {

bool is_consonant(const std::string& w, std::size_t i) {
  switch (w[i]) {
    case 'a': case 'e': case 'i': case 'o': case 'u':
      return false;
    case 'y':
      return i == 0 ? true : !is_consonant(w, i - 1);
    default:
      return true;
  }
}

// m in [C](VC){m}[V], computed over w[0, len).
int measure(const std::string& w, std::size_t len) {
  int m = 0;
  std::size_t i = 0;
  while (i < len && is_consonant(w, i)) ++i;
  while (i < len) {
    while (i < len && !is_consonant(w, i)) ++i;
    if (i >= len) break;
    while (i < len && is_consonant(w, i)) ++i;
    ++m;
  }
  return m;
}

bool contains_vowel(const std::string& w, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) {
    if (!is_consonant(w, i)) return true;
  }
  return false;
}

bool ends_double_consonant(const std::string& w, std::size_t len) {
  return len >= 2 && w[len - 1] == w[len - 2] && is_consonant(w, len - 1);
}

// *o: stem ends consonant-vowel-consonant, last consonant not w, x or y.
bool ends_cvc(const std::string& w, std::size_t len) {
  if (len < 3) return false;
  if (!is_consonant(w, len - 3) || is_consonant(w, len - 2) ||
      !is_consonant(w, len - 1)) {
    return false;
  }
  char c = w[len - 1];
  return c != 'w' && c != 'x' && c != 'y';
}

bool ends_with(const std::string& w, std::string_view suffix) {
  return w.size() >= suffix.size() &&
         std::equal(suffix.rbegin(), suffix.rend(), w.rbegin());
}

std::size_t stem_len(const std::string& w, std::string_view suffix) {
  return w.size() - suffix.size();
}

void replace_suffix(std::string& w, std::string_view suffix,
                    std::string_view repl) {
  w.resize(w.size() - suffix.size());
  w.append(repl);
}

enum class Cond { kPositiveMeasure, kMeasureAbove1, kIonRule };

struct Rule {
  std::string_view suffix;
  std::string_view replacement;
  Cond cond;
};

// Within a step the first rule whose suffix matches decides the outcome:
// if its condition fails the step ends without trying shorter suffixes.
void apply_rules(std::string& w, const Rule* rules, std::size_t n) {
  for (std::size_t r = 0; r < n; ++r) {
    const Rule& rule = rules[r];
    if (!ends_with(w, rule.suffix)) continue;
    std::size_t len = stem_len(w, rule.suffix);
    bool ok = false;
    switch (rule.cond) {
      case Cond::kPositiveMeasure: ok = measure(w, len) > 0; break;
      case Cond::kMeasureAbove1: ok = measure(w, len) > 1; break;
      case Cond::kIonRule:
        ok = measure(w, len) > 1 && len > 0 &&
             (w[len - 1] == 's' || w[len - 1] == 't');
        break;
    }
    if (ok) replace_suffix(w, rule.suffix, rule.replacement);
    return;
  }
}

void step1a(std::string& w) {
  if (ends_with(w, "sses")) {
    replace_suffix(w, "sses", "ss");
  } else if (ends_with(w, "ies")) {
    replace_suffix(w, "ies", "i");
  } else if (ends_with(w, "ss")) {
    // unchanged
  } else if (ends_with(w, "s")) {
    replace_suffix(w, "s", "");
  }
}

void step1b(std::string& w) {
  if (ends_with(w, "eed")) {
    if (measure(w, stem_len(w, "eed")) > 0) replace_suffix(w, "eed", "ee");
    return;
  }
  bool stripped = false;
  for (std::string_view suffix : {std::string_view("ed"), std::string_view("ing")}) {
    if (ends_with(w, suffix) && contains_vowel(w, stem_len(w, suffix))) {
      replace_suffix(w, suffix, "");
      stripped = true;
      break;
    }
  }
  if (!stripped) return;
  if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
    w.push_back('e');
  } else if (ends_double_consonant(w, w.size())) {
    char c = w.back();
    if (c != 'l' && c != 's' && c != 'z') w.pop_back();
  } else if (measure(w, w.size()) == 1 && ends_cvc(w, w.size())) {
    w.push_back('e');
  }
}

void step1c(std::string& w) {
  if (ends_with(w, "y") && contains_vowel(w, w.size() - 1)) {
    w.back() = 'i';
  }
}

constexpr std::array<Rule, 20> kStep2 = {{
    {"ational", "ate", Cond::kPositiveMeasure},
    {"tional", "tion", Cond::kPositiveMeasure},
    {"enci", "ence", Cond::kPositiveMeasure},
    {"anci", "ance", Cond::kPositiveMeasure},
    {"izer", "ize", Cond::kPositiveMeasure},
    {"abli", "able", Cond::kPositiveMeasure},
    {"alli", "al", Cond::kPositiveMeasure},
    {"entli", "ent", Cond::kPositiveMeasure},
    {"eli", "e", Cond::kPositiveMeasure},
    {"ousli", "ous", Cond::kPositiveMeasure},
    {"ization", "ize", Cond::kPositiveMeasure},
    {"ation", "ate", Cond::kPositiveMeasure},
    {"ator", "ate", Cond::kPositiveMeasure},
    {"alism", "al", Cond::kPositiveMeasure},
    {"iveness", "ive", Cond::kPositiveMeasure},
    {"fulness", "ful", Cond::kPositiveMeasure},
    {"ousness", "ous", Cond::kPositiveMeasure},
    {"aliti", "al", Cond::kPositiveMeasure},
    {"iviti", "ive", Cond::kPositiveMeasure},
    {"biliti", "ble", Cond::kPositiveMeasure},
}};

constexpr std::array<Rule, 7> kStep3 = {{
    {"icate", "ic", Cond::kPositiveMeasure},
    {"ative", "", Cond::kPositiveMeasure},
    {"alize", "al", Cond::kPositiveMeasure},
    {"iciti", "ic", Cond::kPositiveMeasure},
    {"ical", "ic", Cond::kPositiveMeasure},
    {"ful", "", Cond::kPositiveMeasure},
    {"ness", "", Cond::kPositiveMeasure},
}};

constexpr std::array<Rule, 19> kStep4 = {{
    {"al", "", Cond::kMeasureAbove1},
    {"ance", "", Cond::kMeasureAbove1},
    {"ence", "", Cond::kMeasureAbove1},
    {"er", "", Cond::kMeasureAbove1},
    {"ic", "", Cond::kMeasureAbove1},
    {"able", "", Cond::kMeasureAbove1},
    {"ible", "", Cond::kMeasureAbove1},
    {"ant", "", Cond::kMeasureAbove1},
    {"ement", "", Cond::kMeasureAbove1},
    {"ment", "", Cond::kMeasureAbove1},
    {"ent", "", Cond::kMeasureAbove1},
    {"ion", "", Cond::kIonRule},
    {"ou", "", Cond::kMeasureAbove1},
    {"ism", "", Cond::kMeasureAbove1},
    {"ate", "", Cond::kMeasureAbove1},
    {"iti", "", Cond::kMeasureAbove1},
    {"ous", "", Cond::kMeasureAbove1},
    {"ive", "", Cond::kMeasureAbove1},
    {"ize", "", Cond::kMeasureAbove1},
}};

void step5a(std::string& w) {
  if (!ends_with(w, "e")) return;
  std::size_t len = w.size() - 1;
  int m = measure(w, len);
  if (m > 1 || (m == 1 && !ends_cvc(w, len))) w.pop_back();
}

void step5b(std::string& w) {
  if (measure(w, w.size()) > 1 && ends_double_consonant(w, w.size()) &&
      w.back() == 'l') {
    w.pop_back();
  }
}

}  // namespace

std::string porter_stem(std::string_view token) {
  std::string w(token);
  if (w.empty()) return w;
  for (char c : w) {
    if (c < 'a' || c > 'z') return w;
  }
  step1a(w);
  step1b(w);
  step1c(w);
  apply_rules(w, kStep2.data(), kStep2.size());
  apply_rules(w, kStep3.data(), kStep3.size());
  apply_rules(w, kStep4.data(), kStep4.size());
  step5a(w);
  step5b(w);
  return w;
}

}  // namespace essmart::text
