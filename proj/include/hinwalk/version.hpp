#pragma once

namespace hinwalk {

inline constexpr const char* kToolName = "hinwalk";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace hinwalk
