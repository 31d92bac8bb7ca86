#pragma once

namespace juntalab {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace juntalab
