#pragma once

namespace rvhedge {

inline constexpr const char* kVersion = "0.1.0";

} // namespace rvhedge
