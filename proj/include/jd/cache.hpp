#pragma once

#include <optional>

namespace jd {

class SpacePresentation;
struct SpaceFlavor;

// Presentation cache under $JD_CACHE_DIR (disabled when unset).  Entries are
// versioned and checksummed; a checksum or version mismatch falls back to
// recomputation.
inline constexpr int kCacheFormatVersion = 1;

std::optional<SpacePresentation> cache_load_presentation(const SpaceFlavor& f);
void cache_store_presentation(const SpacePresentation& sp);

}  // namespace jd
