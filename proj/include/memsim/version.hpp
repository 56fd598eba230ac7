#pragma once

namespace memsim {

inline constexpr const char* kToolName = "memsim";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace memsim
