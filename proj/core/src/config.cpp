#include "twistrack/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "twistrack/errors.hpp"

namespace twr {

Config& Config::global() {
  static Config c = [] {
    Config c0;
    c0.apply_env();
    return c0;
  }();
  return c;
}

void Config::apply_env() {
  if (const char* d = std::getenv("TWISTRACK_CACHE_DIR")) cache_dir = d;
}

void Config::load_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Errc::Usage, "cannot open config file " + path);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (key == "threads") threads = std::stoi(val);
    else if (key == "closure_cap") closure_cap = std::stoull(val);
    else if (key == "orbit_cap") orbit_cap = std::stoull(val);
    else if (key == "subgroup_cap") subgroup_cap = std::stoull(val);
    else if (key == "pair_budget") pair_budget = std::stoull(val);
    else if (key == "exhaustive_orbit_cap") exhaustive_orbit_cap = std::stoull(val);
    else if (key == "factor_cap") factor_cap = std::stoull(val);
    else if (key == "cache_dir") cache_dir = val;
    else fail(Errc::Usage, "unknown config key " + key);
  }
}

int Config::effective_threads() const {
  if (threads > 0) return threads;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

}  // namespace twr
