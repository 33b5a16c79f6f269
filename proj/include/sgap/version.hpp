#pragma once

namespace sgap {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "subrank-gap";
inline constexpr const char* kRngId = "xoshiro256**";

}  // namespace sgap
