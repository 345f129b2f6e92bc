#include "taut/hodge_cache.hpp"

#include "taut/error.hpp"
#include "taut/json_io.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>

namespace taut {

namespace {

class FileLock {
 public:
  explicit FileLock(const std::filesystem::path& path) {
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd_ < 0 || ::flock(fd_, LOCK_EX) != 0) {
      if (fd_ >= 0) ::close(fd_);
      throw Error(ErrorKind::internal, "cannot lock cache " + path.string());
    }
  }
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_ = -1;
};

std::pair<int, std::vector<int>> hurwitz_key(const HurwitzProblem& p) { return {p.genus(), p.ordered_alpha()}; }

}  // namespace

std::filesystem::path HodgeCache::default_directory() {
  if (const char* dir = std::getenv("TAUT_CACHE_DIR"); dir && *dir) return dir;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "taut";
  if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "taut";
  return std::filesystem::temp_directory_path() / "taut";
}

HodgeCache::HodgeCache(std::filesystem::path directory)
    : directory_(std::move(directory)), file_(directory_ / "cache.json") {
  load();
}

void HodgeCache::load() {
  hodge_.clear();
  hurwitz_.clear();
  std::ifstream in(file_);
  if (!in) return;
  try {
    const Json j = Json::parse(in);
    if (j.at("schema") != kCacheSchema) return;
    decltype(hodge_) hodge;
    decltype(hurwitz_) hurwitz;
    for (const auto& entry : j.at("hodge")) {
      hodge.emplace(std::pair{entry.at("g").get<int>(), entry.at("n").get<int>()},
                    hodge_table_from_json(entry.at("table")));
    }
    for (const auto& entry : j.at("hurwitz")) {
      auto value = hurwitz_value_from_json(entry);
      hurwitz.emplace(hurwitz_key(value.problem), std::move(value));
    }
    hodge_ = std::move(hodge);
    hurwitz_ = std::move(hurwitz);
  } catch (const nlohmann::json::exception&) {
  } catch (const Error&) {
  }
}

std::optional<HodgeTable> HodgeCache::find_hodge(int g, int n) const {
  auto it = hodge_.find({g, n});
  if (it == hodge_.end()) return std::nullopt;
  return it->second;
}

std::optional<HurwitzValue> HodgeCache::find_hurwitz(int g, const std::vector<int>& ordered_alpha) const {
  auto it = hurwitz_.find({g, ordered_alpha});
  if (it == hurwitz_.end()) return std::nullopt;
  return it->second;
}

// Caller holds the lock.
void HodgeCache::write() const {
  Json out{{"schema", kCacheSchema}, {"hodge", Json::array()}, {"hurwitz", Json::array()}};
  for (const auto& [key, t] : hodge_) out["hodge"].push_back(Json{{"g", key.first}, {"n", key.second}, {"table", to_json(t)}});
  for (const auto& [key, v] : hurwitz_) out["hurwitz"].push_back(to_json(v));
  const auto tmp = directory_ / ("cache.json.tmp." + std::to_string(::getpid()));
  {
    std::ofstream o(tmp);
    o << out.dump(1) << '\n';
    if (!o) throw Error(ErrorKind::internal, "cannot write cache " + tmp.string());
  }
  std::filesystem::rename(tmp, file_);
}

void HodgeCache::store_hodge(int g, int n, const HodgeTable& table) {
  std::filesystem::create_directories(directory_);
  FileLock lock(directory_ / "cache.lock");
  load();
  auto it = hodge_.find({g, n});
  if (it != hodge_.end() && it->second != table) {
    throw InvariantViolation("cache holds a different Hodge table for (g, n) = (" + std::to_string(g) + ", " +
                             std::to_string(n) + ")");
  }
  hodge_[{g, n}] = table;
  write();
}

void HodgeCache::store_hurwitz(const std::vector<HurwitzValue>& values) {
  std::filesystem::create_directories(directory_);
  FileLock lock(directory_ / "cache.lock");
  load();
  for (const auto& v : values) {
    auto [it, inserted] = hurwitz_.emplace(hurwitz_key(v.problem), v);
    if (!inserted && (it->second.tuple_count != v.tuple_count || it->second.h != v.h)) {
      throw InvariantViolation("cache holds a different Hurwitz value for the same profile");
    }
  }
  write();
}

}  // namespace taut
