#pragma once

namespace cubemax {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cubemax
