#ifndef CDIFF_CACHE_HPP
#define CDIFF_CACHE_HPP

// On-disk cache of spectrum reports keyed by SHA-256 of the canonical request
// (field, function, c, schema version). Entries that fail to parse or do not
// match their key are recomputed and overwritten.

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <openssl/evp.h>

#include "cdiff/io.hpp"
#include "cdiff/spectra.hpp"

namespace cdiff {

inline constexpr int kCacheSchemaVersion = 1;

inline std::string sha256_hex(const std::string& data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

inline json cache_request(const Field& field, const FunctionSpec& f, Element c) {
  return {{"field", to_json(FieldSummary::of(field))}, {"function", to_json(f)}, {"c", c},
          {"schema", kCacheSchemaVersion}};
}

inline std::string cache_key(const Field& field, const FunctionSpec& f, Element c) {
  return sha256_hex(cache_request(field, f, c).dump());
}

class ReportCache {
 public:
  /// An empty directory disables caching.
  explicit ReportCache(std::filesystem::path dir = {}, std::ostream* warnings = &std::cerr)
      : dir_(std::move(dir)), warnings_(warnings) {
    if (!dir_.empty()) std::filesystem::create_directories(dir_);
  }

  bool enabled() const { return !dir_.empty(); }
  const std::filesystem::path& directory() const { return dir_; }
  std::filesystem::path entry_path(const std::string& key) const { return dir_ / (key + ".json"); }

  std::optional<SpectrumReport> get(const Field& field, const FunctionSpec& f, Element c) {
    if (!enabled()) return std::nullopt;
    const std::string key = cache_key(field, f, c);
    const auto path = entry_path(key);
    if (!std::filesystem::exists(path)) return std::nullopt;
    try {
      std::ifstream in(path);
      const json entry = json::parse(in);
      if (entry.at("key").get<std::string>() != key || entry.at("request") != cache_request(field, f, c))
        throw std::runtime_error("key mismatch");
      return report_from_json(entry.at("report"));
    } catch (const std::exception& e) {
      std::lock_guard lock(mutex_);
      ++corrupt_;
      if (warnings_) *warnings_ << "warning: ignoring corrupt cache entry " << path.string() << " (" << e.what() << ")\n";
      return std::nullopt;
    }
  }

  void put(const Field& field, const FunctionSpec& f, Element c, const SpectrumReport& report) {
    if (!enabled()) return;
    const std::string key = cache_key(field, f, c);
    const json entry = {{"key", key}, {"request", cache_request(field, f, c)}, {"report", to_json(report)}};
    // Write-then-rename so concurrent readers never see a partial entry.
    const auto path = entry_path(key);
    std::ostringstream suffix;
    suffix << ".tmp" << std::this_thread::get_id();
    const auto tmp = path.string() + suffix.str();
    {
      std::ofstream out(tmp, std::ios::trunc);
      out << entry.dump();
    }
    std::filesystem::rename(tmp, path);
  }

  SpectrumReport uniformity(const Field& field, const FunctionSpec& f, Element c, const SpectrumOptions& opt = {}) {
    if (auto hit = get(field, f, c)) {
      std::lock_guard lock(mutex_);
      ++hits_;
      return *hit;
    }
    SpectrumReport r = cdiff::uniformity(field, f, c, opt);
    put(field, f, c, r);
    std::lock_guard lock(mutex_);
    ++misses_;
    return r;
  }

  std::uint64_t hits() const { return hits_; }
  std::uint64_t misses() const { return misses_; }
  std::uint64_t corrupt_entries() const { return corrupt_; }

 private:
  std::filesystem::path dir_;
  std::ostream* warnings_;
  std::mutex mutex_;
  std::uint64_t hits_ = 0, misses_ = 0, corrupt_ = 0;
};

}  // namespace cdiff

#endif  // CDIFF_CACHE_HPP
