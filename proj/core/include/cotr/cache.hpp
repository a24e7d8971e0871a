#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

namespace cotr {

/// Content-addressed file cache: one file per key under a directory.
/// Writes go to a temp file and are renamed into place, so a crash mid-run
/// never leaves a partially written entry readable. Entries are append-only
/// during a run; an unreadable entry is treated as a miss.
class DiskCache {
 public:
  explicit DiskCache(std::filesystem::path dir);

  std::optional<std::string> get(const std::string& key_hex) const;
  void put(const std::string& key_hex, std::string_view value);

  bool contains(const std::string& key_hex) const;
  std::filesystem::path path_for(const std::string& key_hex) const;
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  mutable std::mutex mutex_;
};

}  // namespace cotr
