#include "zsum/store.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace zsum {

ResultsStore::ResultsStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
  file_ = dir_ / ("results-v" + std::to_string(kEngineVersion) + ".jsonl");
  load();
}

std::filesystem::path ResultsStore::default_dir() {
  if (const char* env = std::getenv("ZSUM_CACHE_DIR"); env && *env) return env;
  return ".zsum-cache";
}

std::string ResultsStore::key_for(const GroupSpec& g, const LengthSet& lengths) {
  return "G=" + g.to_string() + "|L=" + lengths.to_string() + "|engine=" + std::to_string(kEngineVersion);
}

void ResultsStore::load() {
  std::ifstream in(file_);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    // A torn final line from an interrupted sweep is dropped.
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("key")) continue;
    auto key = j["key"].get<std::string>();
    records_[key] = std::move(j);
  }
}

std::optional<nlohmann::json> ResultsStore::lookup(const std::string& key) const {
  std::lock_guard lock(mu_);
  auto it = records_.find(key);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

void ResultsStore::put(const std::string& key, nlohmann::json record) {
  record["key"] = key;
  std::lock_guard lock(mu_);
  std::ofstream out(file_, std::ios::app);
  if (!out) throw std::runtime_error("cannot append to " + file_.string());
  out << record.dump() << '\n';
  records_[key] = std::move(record);
}

std::size_t ResultsStore::size() const {
  std::lock_guard lock(mu_);
  return records_.size();
}

}  // namespace zsum
