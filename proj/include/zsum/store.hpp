#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include <json.hpp>

#include "zsum/group.hpp"
#include "zsum/length_set.hpp"

namespace zsum {

/// Bumped whenever a change could alter any stored search result.
inline constexpr int kEngineVersion = 1;

/// Append-only JSONL record store. Each line is an object with a "key"
/// field; later lines win over earlier ones with the same key.
class ResultsStore {
 public:
  explicit ResultsStore(std::filesystem::path dir);

  /// $ZSUM_CACHE_DIR, else ".zsum-cache" under the working directory.
  static std::filesystem::path default_dir();
  static std::string key_for(const GroupSpec& g, const LengthSet& lengths);

  const std::filesystem::path& file() const { return file_; }

  std::optional<nlohmann::json> lookup(const std::string& key) const;
  void put(const std::string& key, nlohmann::json record);
  std::size_t size() const;

 private:
  void load();

  std::filesystem::path dir_;
  std::filesystem::path file_;
  mutable std::mutex mu_;
  std::map<std::string, nlohmann::json> records_;
};

}  // namespace zsum
