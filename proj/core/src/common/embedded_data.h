#ifndef ESSMART_SRC_COMMON_EMBEDDED_DATA_H_
#define ESSMART_SRC_COMMON_EMBEDDED_DATA_H_

#include <string_view>

// Contents of core/data/*.txt, generated into embedded_data.cc at configure
// time.
namespace essmart::data {

extern const std::string_view kStopwordsEn;
extern const std::string_view kStopwordsDomain;
extern const std::string_view kAbbreviations;
extern const std::string_view kCueBonus;
extern const std::string_view kCueStigma;
extern const std::string_view kLemmaExceptions;
extern const std::string_view kPosLexicon;

}  // namespace essmart::data

#endif  // ESSMART_SRC_COMMON_EMBEDDED_DATA_H_
