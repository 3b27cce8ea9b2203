#include "slicestem/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "slicestem/abelian_group.hpp"

namespace slicestem::config {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

unsigned long parse_unsigned(const std::string& text, const std::string& key) {
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || text.front() == '-')
    throw ConfigError("config: " + key + " expects a non-negative integer, got '" + text + "'");
  return v;
}

}  // namespace

std::map<unsigned long, ExtWindow> Config::default_windows() {
  return {{2, {10, 20}}, {3, {7, 30}}, {5, {5, 40}}};
}

ExtWindow Config::window_for(unsigned long p) const {
  if (auto it = windows.find(p); it != windows.end()) return it->second;
  return {unsigned(20 / (2 * (p - 1))), 20};
}

Config parse_config(const std::string& text, const std::filesystem::path& origin, Config base) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key == "cache_dir") {
      base.cache_dir = std::filesystem::absolute(origin / value).lexically_normal();
    } else if (key == "stems") {
      base.stems = std::filesystem::absolute(origin / value).lexically_normal();
    } else if (key == "format") {
      if (value != "text" && value != "json") throw ConfigError("config: format must be text or json");
      base.format = value;
    } else if (key == "jobs") {
      base.jobs = unsigned(parse_unsigned(value, key));
      if (base.jobs == 0) throw ConfigError("config: jobs must be at least 1");
    } else if (key.rfind("window.p", 0) == 0) {
      const unsigned long p = parse_unsigned(key.substr(8), key);
      if (!is_prime(p)) throw ConfigError("config: " + key + " does not name a prime");
      const auto comma = value.find(',');
      if (comma == std::string::npos) throw ConfigError("config: " + key + " expects s_max,t_max");
      base.windows[p] = {unsigned(parse_unsigned(trim(value.substr(0, comma)), key)),
                         int(parse_unsigned(trim(value.substr(comma + 1)), key))};
    } else {
      throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  return base;
}

Config load_config(const std::filesystem::path& file, Config base) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot read config file " + file.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), std::filesystem::absolute(file).parent_path(), std::move(base));
}

Config resolve(const std::optional<std::filesystem::path>& file) {
  Config c;
  if (file) c = load_config(*file, std::move(c));
  if (const char* env = std::getenv("SLICESTEM_CACHE_DIR"); env && *env) c.cache_dir = env;
  return c;
}

}  // namespace slicestem::config
