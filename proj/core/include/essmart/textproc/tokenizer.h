#ifndef ESSMART_TEXTPROC_TOKENIZER_H_
#define ESSMART_TEXTPROC_TOKENIZER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace essmart::text {

// A word token with its byte span in the source text.
struct Token {
  std::string text;
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Whitespace-delimited chunks with leading/trailing punctuation stripped.
// Internal punctuation is kept ("a@b.com", "don't", "403-555-0100"), and a
// trailing possessive "'s" becomes its own token. Bytes >= 0x80 count as word
// characters so UTF-8 letters survive.
std::vector<Token> tokenize(std::string_view text);

std::vector<std::string> word_tokens(std::string_view text);

// Lowercased word tokens; the unit used by ROUGE and the summarizers.
std::vector<std::string> lower_tokens(std::string_view text);

bool is_word_char(char c);

}  // namespace essmart::text

#endif  // ESSMART_TEXTPROC_TOKENIZER_H_
