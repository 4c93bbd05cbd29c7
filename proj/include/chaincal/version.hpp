#pragma once

namespace chaincal {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace chaincal
