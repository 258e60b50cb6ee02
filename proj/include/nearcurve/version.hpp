#pragma once

namespace nearcurve {

inline constexpr const char* kVersion = "0.1.0";

} // namespace nearcurve
