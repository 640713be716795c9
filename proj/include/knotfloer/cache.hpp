#pragma once

#include <unistd.h>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "knotfloer/version.hpp"

namespace knotfloer {

struct InvariantRecord {
  std::string kind;    // signature | alexander | count | brieskorn | ...
  std::string params;  // canonical key string
  nlohmann::json value;
  std::string version;
  std::string timestamp;
};

namespace cache_detail {

inline uint64_t fnv1a64(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string now_iso8601() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm_utc;
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

}  // namespace cache_detail

// Content-addressed JSON record store. The key is a pure function of
// (kind, params, version); concurrent readers are safe and writers serialize
// through atomic rename. Corrupt records are treated as misses.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
  }

  static std::optional<ResultCache> from_env() {
    const char* dir = std::getenv("KNOTFLOER_CACHE");
    if (!dir || !*dir) return std::nullopt;
    return ResultCache(dir);
  }

  const std::filesystem::path& dir() const { return dir_; }

  std::optional<InvariantRecord> get(const std::string& kind,
                                     const std::string& params) const {
    std::ifstream in(path_for(kind, params));
    if (!in) return std::nullopt;
    try {
      nlohmann::json j;
      in >> j;
      InvariantRecord rec;
      rec.kind = j.at("kind").get<std::string>();
      rec.params = j.at("params").get<std::string>();
      rec.value = j.at("value");
      rec.version = j.at("version").get<std::string>();
      rec.timestamp = j.value("timestamp", "");
      if (rec.kind != kind || rec.params != params || rec.version != kVersion)
        return std::nullopt;  // stale or colliding record: recompute
      return rec;
    } catch (...) {
      return std::nullopt;  // corrupt record: ignore and recompute
    }
  }

  void put(const InvariantRecord& rec) const {
    nlohmann::json j;
    j["kind"] = rec.kind;
    j["params"] = rec.params;
    j["value"] = rec.value;
    j["version"] = rec.version.empty() ? kVersion : rec.version;
    j["timestamp"] =
        rec.timestamp.empty() ? cache_detail::now_iso8601() : rec.timestamp;
    std::filesystem::path final_path = path_for(rec.kind, rec.params);
    std::filesystem::path tmp =
        final_path.string() + ".tmp." + std::to_string(getpid());
    {
      std::ofstream out(tmp);
      out << j.dump(2) << "\n";
    }
    std::filesystem::rename(tmp, final_path);
  }

  void put_value(const std::string& kind, const std::string& params,
                 nlohmann::json value) const {
    put({kind, params, std::move(value), kVersion, ""});
  }

 private:
  std::filesystem::path path_for(const std::string& kind,
                                 const std::string& params) const {
    uint64_t h = cache_detail::fnv1a64(kind + "\x1f" + params + "\x1f" + kVersion);
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return dir_ / (std::string(buf) + ".json");
  }

  std::filesystem::path dir_;
};

}  // namespace knotfloer
