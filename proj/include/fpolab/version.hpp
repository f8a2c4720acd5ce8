#pragma once

namespace fpolab {

inline constexpr const char* kVersion = "0.1.0";

// Cache compatibility tag: bump whenever canonical forms, enumeration order,
// or the catalog JSON layout change. Caches with a different tag are rebuilt.
inline constexpr const char* kCacheTag = "fpolab-catalog-v3";

}  // namespace fpolab
