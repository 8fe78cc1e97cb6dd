#pragma once
// Content-addressed on-disk cache for CLI results.  A cache entry stores the
// full canonical key alongside the output, so hash collisions and stale
// version tags degrade to recomputation, never to wrong output.

#include <optional>
#include <string>

namespace spinh {

struct CacheConfig {
  std::string dir;  // empty when caching is disabled
  bool enabled() const { return !dir.empty(); }
};

// Resolve from --cache-dir / SPINH_CACHE_DIR / --no-cache.
CacheConfig resolve_cache_config(const std::string& flag_dir, bool no_cache);

std::string fnv1a_hex(const std::string& s);

struct CacheEntry {
  std::string output;
  int exit_code = 0;
};

// nullopt on miss; corrupt or mismatched entries warn on stderr and miss.
std::optional<CacheEntry> cache_lookup(const CacheConfig& cfg, const std::string& key);
void cache_store(const CacheConfig& cfg, const std::string& key, const CacheEntry& entry);

}  // namespace spinh
