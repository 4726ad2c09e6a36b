#pragma once

namespace qwmix {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace qwmix
