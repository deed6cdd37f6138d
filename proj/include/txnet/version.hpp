#pragma once

namespace txnet {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace txnet
