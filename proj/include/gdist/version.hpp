#pragma once

namespace gdist {
inline constexpr const char* kToolName = "gdist";
inline constexpr const char* kVersion = "0.1.0";
} // namespace gdist
