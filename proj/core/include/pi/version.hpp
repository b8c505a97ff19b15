#pragma once

namespace pi {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace pi
