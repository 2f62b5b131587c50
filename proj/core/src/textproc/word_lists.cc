#include "essmart/textproc/word_lists.h"

#include "essmart/common/error.h"
#include "essmart/common/io.h"
#include "../common/embedded_data.h"

namespace essmart::text {
namespace {

WordSet to_set(std::string_view contents) {
  WordSet out;
  for (auto& entry : parse_list(contents)) out.insert(to_lower(entry));
  return out;
}

}  // namespace

const WordSet& english_stopwords() {
  static const WordSet words = to_set(data::kStopwordsEn);
  return words;
}

const WordSet& domain_stopwords() {
  static const WordSet words = to_set(data::kStopwordsDomain);
  return words;
}

const WordSet& default_stopwords() {
  static const WordSet words = [] {
    WordSet all = english_stopwords();
    all.insert(domain_stopwords().begin(), domain_stopwords().end());
    return all;
  }();
  return words;
}

const WordSet& default_abbreviations() {
  static const WordSet words = to_set(data::kAbbreviations);
  return words;
}

const WordSet& default_cue_bonus_words() {
  static const WordSet words = to_set(data::kCueBonus);
  return words;
}

const WordSet& default_cue_stigma_words() {
  static const WordSet words = to_set(data::kCueStigma);
  return words;
}

WordSet load_word_set(const std::filesystem::path& path) {
  return to_set(read_file(path));
}

const WordSet& stopword_profile(const std::string& name) {
  static const WordSet empty;
  if (name == "default") return default_stopwords();
  if (name == "english") return english_stopwords();
  if (name == "none") return empty;
  throw Error(ErrorCode::kInvalidParameter,
              "unknown stopword profile '" + name + "'");
}

}  // namespace essmart::text
