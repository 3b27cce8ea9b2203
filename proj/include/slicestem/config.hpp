#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace slicestem::config {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExtWindow {
  unsigned s_max = 0;
  int t_max = 0;
};

struct Config {
  std::filesystem::path cache_dir = ".slicestem-cache";
  std::optional<std::filesystem::path> stems;  // seed table when unset
  std::string format = "text";                 // "text" or "json"
  unsigned jobs = 1;
  std::map<unsigned long, ExtWindow> windows = default_windows();

  static std::map<unsigned long, ExtWindow> default_windows();
  /// Window for prime p: the configured one, or s_max = t/(2(p-1)) at t = 20.
  ExtWindow window_for(unsigned long p) const;
};

/// Parses `key = value` lines on top of `base`. Keys: cache_dir, stems,
/// format, jobs, window.<p> (as "s_max,t_max"). Blank lines and lines
/// starting with '#' are skipped. Relative paths resolve against `origin`.
Config parse_config(const std::string& text, const std::filesystem::path& origin, Config base = {});

Config load_config(const std::filesystem::path& file, Config base = {});

/// Defaults, then the file (if any), then SLICESTEM_CACHE_DIR.
Config resolve(const std::optional<std::filesystem::path>& file);

}  // namespace slicestem::config
