#pragma once

namespace runge {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace runge
