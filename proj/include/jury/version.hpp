#pragma once

namespace jury {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace jury
