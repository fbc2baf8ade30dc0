#pragma once

namespace starnet {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace starnet
