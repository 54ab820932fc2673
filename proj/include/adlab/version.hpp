#pragma once

namespace adlab {

inline constexpr const char* kVersion = "0.1.0";

} // namespace adlab
