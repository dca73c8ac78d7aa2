#ifndef TWISTRACK_CONFIG_HPP
#define TWISTRACK_CONFIG_HPP

#include <cstdint>
#include <string>

namespace twr {

// Runtime limits and knobs. Values come from (in increasing precedence)
// built-in defaults, a `key = value` config file, then command-line flags.
// The cache directory may additionally be set by TWISTRACK_CACHE_DIR.
struct Config {
  int threads = 0;                      // 0 = hardware concurrency
  std::uint64_t closure_cap = 20'000'000;   // max group closure size
  std::uint64_t orbit_cap = 20'000'000;     // max twisted-orbit size
  std::uint64_t subgroup_cap = 2'000'000;   // max <r,s> closure in type-D scans
  std::uint64_t pair_budget = 50'000'000;   // max (r,s) pairs in type-D scans
  std::uint64_t exhaustive_orbit_cap = 5000;  // pair scan is quadratic
  std::uint64_t factor_cap = 10'000'000;    // trial-division bound
  std::string cache_dir;                // empty = no disk cache

  static Config& global();
  void load_file(const std::string& path);
  void apply_env();
  int effective_threads() const;
};

}  // namespace twr

#endif
