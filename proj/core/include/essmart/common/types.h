#ifndef ESSMART_COMMON_TYPES_H_
#define ESSMART_COMMON_TYPES_H_

#include <string_view>

namespace essmart {

enum class SpeakerRole { kCustomer, kCrmStaff };

std::string_view to_string(SpeakerRole role);
SpeakerRole speaker_role_from_string(std::string_view name);

}  // namespace essmart

#endif  // ESSMART_COMMON_TYPES_H_
