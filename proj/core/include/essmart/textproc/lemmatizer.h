#ifndef ESSMART_TEXTPROC_LEMMATIZER_H_
#define ESSMART_TEXTPROC_LEMMATIZER_H_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace essmart::text {

enum class PosHint { kNoun, kVerb, kAdjective };

// Dictionary-plus-rules lemmatizer. The irregular-form table is consulted
// first; otherwise verb suffix rules (-ied, -ing, -ed) then plural rules
// (-ies, -sses, sibilant + -es, -s). Unknown tokens come back unchanged.
class Lemmatizer {
 public:
  Lemmatizer();  // bundled exception table
  explicit Lemmatizer(std::map<std::string, std::string, std::less<>> exceptions);

  static Lemmatizer from_file(const std::filesystem::path& path);

  std::string lemmatize(std::string_view token,
                        std::optional<PosHint> pos = std::nullopt) const;

  const std::map<std::string, std::string, std::less<>>& exceptions() const {
    return exceptions_;
  }

 private:
  std::map<std::string, std::string, std::less<>> exceptions_;
  std::set<std::string, std::less<>> lemmas_;
};

const Lemmatizer& default_lemmatizer();

std::string lemmatize(std::string_view token,
                      std::optional<PosHint> pos = std::nullopt);

}  // namespace essmart::text

#endif  // ESSMART_TEXTPROC_LEMMATIZER_H_
