#pragma once

namespace nonlin {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace nonlin
