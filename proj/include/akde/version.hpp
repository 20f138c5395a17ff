#pragma once

namespace akde {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace akde
