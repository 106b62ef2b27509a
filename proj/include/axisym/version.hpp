#pragma once

namespace axisym {

inline constexpr const char* kVersion = "0.1.0";

/// Version tag of the on-disk formats (manifest, CSV, binary realization).
inline constexpr int kFormatVersion = 1;

}  // namespace axisym
