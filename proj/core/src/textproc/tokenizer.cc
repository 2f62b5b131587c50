#include "essmart/textproc/tokenizer.h"

#include <cctype>

#include "essmart/common/io.h"

namespace essmart::text {

bool is_word_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || std::isalnum(u);
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t chunk_end = i;
    while (chunk_end < n &&
           !std::isspace(static_cast<unsigned char>(text[chunk_end]))) {
      ++chunk_end;
    }
    std::size_t b = i;
    std::size_t e = chunk_end;
    while (b < e && !is_word_char(text[b])) ++b;
    while (e > b && !is_word_char(text[e - 1])) --e;
    if (b < e) {
      std::string_view word = text.substr(b, e - b);
      if (word.size() > 2 && word[word.size() - 1] == 's' &&
          word[word.size() - 2] == '\'') {
        tokens.push_back({std::string(word.substr(0, word.size() - 2)), b, e - 2});
        tokens.push_back({"'s", e - 2, e});
      } else {
        tokens.push_back({std::string(word), b, e});
      }
    }
    i = chunk_end;
  }
  return tokens;
}

std::vector<std::string> word_tokens(std::string_view text) {
  std::vector<std::string> out;
  for (auto& t : tokenize(text)) out.push_back(std::move(t.text));
  return out;
}

std::vector<std::string> lower_tokens(std::string_view text) {
  std::vector<std::string> out;
  for (auto& t : tokenize(text)) out.push_back(to_lower(t.text));
  return out;
}

}  // namespace essmart::text
