#ifndef ESSMART_TEXTPROC_WORD_LISTS_H_
#define ESSMART_TEXTPROC_WORD_LISTS_H_

#include <filesystem>
#include <set>
#include <string>

namespace essmart::text {

using WordSet = std::set<std::string, std::less<>>;

// Built-in defaults. The same lists ship under core/data/ as editable files;
// load_word_set() reads a replacement in the list-file format.
const WordSet& english_stopwords();
const WordSet& domain_stopwords();
const WordSet& default_stopwords();  // english + domain
const WordSet& default_abbreviations();
const WordSet& default_cue_bonus_words();
const WordSet& default_cue_stigma_words();

WordSet load_word_set(const std::filesystem::path& path);

// Profiles accepted wherever a stopword list is selected by name:
// "default" (english + domain), "english", "none".
const WordSet& stopword_profile(const std::string& name);

}  // namespace essmart::text

#endif  // ESSMART_TEXTPROC_WORD_LISTS_H_
