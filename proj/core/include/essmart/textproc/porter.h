#ifndef ESSMART_TEXTPROC_PORTER_H_
#define ESSMART_TEXTPROC_PORTER_H_

#include <string>
#include <string_view>

namespace essmart::text {

// Porter (1980) suffix stripping, steps 1a through 5b as published.
// Input is expected to be a lowercase alphabetic token; anything else is
// returned unchanged.
std::string porter_stem(std::string_view token);

}  // namespace essmart::text

#endif  // ESSMART_TEXTPROC_PORTER_H_
