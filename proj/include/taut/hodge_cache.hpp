#pragma once

// Persistent cache of Hodge tables (keyed by (g, n)) and Hurwitz values
// (keyed by g and the ordered profile). Purely an optimization: every entry
// can be recomputed.
//
// One JSON file, {"schema": "taut-cache/1", "hodge": [...], "hurwitz": [...]}.
// Writers take an exclusive lock on a sibling lock file, re-read, merge and
// replace the file by rename, so concurrent processes never lose entries and
// readers never see a partial file. A file with another schema tag or that
// fails to parse is treated as empty.

#include "taut/elsv.hpp"
#include "taut/hurwitz.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <vector>

namespace taut {

inline constexpr const char* kCacheSchema = "taut-cache/1";

class HodgeCache {
 public:
  /// $TAUT_CACHE_DIR, else $XDG_CACHE_HOME/taut, else $HOME/.cache/taut.
  static std::filesystem::path default_directory();

  explicit HodgeCache(std::filesystem::path directory);

  const std::filesystem::path& file() const noexcept { return file_; }

  std::optional<HodgeTable> find_hodge(int g, int n) const;
  std::optional<HurwitzValue> find_hurwitz(int g, const std::vector<int>& ordered_alpha) const;

  /// Throws InvariantViolation if a different value is already stored.
  void store_hodge(int g, int n, const HodgeTable& table);
  void store_hurwitz(const std::vector<HurwitzValue>& values);

 private:
  void load();
  void write() const;

  std::filesystem::path directory_;
  std::filesystem::path file_;
  std::map<std::pair<int, int>, HodgeTable> hodge_;
  std::map<std::pair<int, std::vector<int>>, HurwitzValue> hurwitz_;
};

}  // namespace taut
