#pragma once

namespace nnosim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace nnosim
