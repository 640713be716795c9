#pragma once

namespace knotfloer {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace knotfloer
