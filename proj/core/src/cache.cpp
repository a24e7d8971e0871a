#include "cotr/cache.hpp"

#include "cotr/errors.hpp"

#include <fstream>
#include <sstream>
#include <thread>

namespace cotr {

DiskCache::DiskCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) {
    throw FileError("cannot create cache directory " + dir_.string() + ": " +
                    ec.message());
  }
}

std::filesystem::path DiskCache::path_for(const std::string& key_hex) const {
  return dir_ / (key_hex + ".json");
}

std::optional<std::string> DiskCache::get(const std::string& key_hex) const {
  std::ifstream in(path_for(key_hex), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof()) return std::nullopt;
  return buf.str();
}

bool DiskCache::contains(const std::string& key_hex) const {
  std::error_code ec;
  return std::filesystem::exists(path_for(key_hex), ec);
}

void DiskCache::put(const std::string& key_hex, std::string_view value) {
  std::lock_guard<std::mutex> lock(mutex_);
  const std::filesystem::path final_path = path_for(key_hex);
  std::ostringstream tmp_name;
  tmp_name << ".tmp-" << key_hex << "-"
           << std::hash<std::thread::id>{}(std::this_thread::get_id());
  const std::filesystem::path tmp_path = dir_ / tmp_name.str();
  {
    std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
    if (!out) throw FileError("cannot write cache entry " + tmp_path.string());
    out.write(value.data(), static_cast<std::streamsize>(value.size()));
    if (!out.good()) {
      throw FileError("short write on cache entry " + tmp_path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp_path, final_path, ec);
  if (ec) {
    std::filesystem::remove(tmp_path, ec);
    throw FileError("cannot publish cache entry " + final_path.string());
  }
}

}  // namespace cotr
