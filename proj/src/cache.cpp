#include "spinh/cache.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace spinh {

CacheConfig resolve_cache_config(const std::string& flag_dir, bool no_cache) {
  CacheConfig cfg;
  if (no_cache) return cfg;
  if (!flag_dir.empty()) {
    cfg.dir = flag_dir;
  } else if (const char* env = std::getenv("SPINH_CACHE_DIR"); env && *env) {
    cfg.dir = env;
  }
  return cfg;
}

std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::filesystem::path entry_path(const CacheConfig& cfg, const std::string& key) {
  return std::filesystem::path(cfg.dir) / (fnv1a_hex(key) + ".json");
}

}  // namespace

std::optional<CacheEntry> cache_lookup(const CacheConfig& cfg, const std::string& key) {
  if (!cfg.enabled()) return std::nullopt;
  const std::filesystem::path path = entry_path(cfg, key);
  std::error_code ec;
  if (!std::filesystem::exists(path, ec) || ec) return std::nullopt;
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  nlohmann::json doc = nlohmann::json::parse(buf.str(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || doc.value("schema", 0) != 1 ||
      !doc.contains("key") || !doc.contains("output")) {
    std::cerr << "warning: ignoring corrupt cache entry " << path.string() << "\n";
    return std::nullopt;
  }
  if (doc["key"].get<std::string>() != key) return std::nullopt;
  CacheEntry entry;
  entry.output = doc["output"].get<std::string>();
  entry.exit_code = doc.value("exit", 0);
  return entry;
}

void cache_store(const CacheConfig& cfg, const std::string& key, const CacheEntry& entry) {
  if (!cfg.enabled()) return;
  std::error_code ec;
  std::filesystem::create_directories(cfg.dir, ec);
  if (ec) {
    std::cerr << "warning: cannot create cache dir " << cfg.dir << "\n";
    return;
  }
  nlohmann::ordered_json doc;
  doc["schema"] = 1;
  doc["key"] = key;
  doc["exit"] = entry.exit_code;
  doc["output"] = entry.output;
  std::ofstream out(entry_path(cfg, key));
  if (!out) {
    std::cerr << "warning: cannot write cache entry in " << cfg.dir << "\n";
    return;
  }
  out << doc.dump(2) << "\n";
}

}  // namespace spinh
