#include "essmart/common/types.h"

#include <string>

#include "essmart/common/error.h"

namespace essmart {

std::string_view to_string(SpeakerRole role) {
  return role == SpeakerRole::kCustomer ? "customer" : "crm_staff";
}

SpeakerRole speaker_role_from_string(std::string_view name) {
  if (name == "customer") return SpeakerRole::kCustomer;
  if (name == "crm_staff") return SpeakerRole::kCrmStaff;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown speaker_role '" + std::string(name) + "'");
}

}  // namespace essmart
