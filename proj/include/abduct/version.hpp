#pragma once

namespace abduct {

inline constexpr const char* kToolName = "abduct";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace abduct
