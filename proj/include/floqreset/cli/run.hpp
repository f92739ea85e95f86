#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "floqreset/config.hpp"
#include "floqreset/xy_correlators.hpp"

namespace floqreset::cli {

inline constexpr const char* kVersion = "0.3.0";
inline constexpr std::uint64_t kDefaultSeed = 0x5eed2024ULL;

const std::vector<std::string>& subcommands();

struct RunOptions {
  std::string subcommand;
  std::optional<std::string> config_path;
  /// key=value pairs applied on top of the config file.
  RawConfig overrides;
  std::string out_dir = ".";
  int jobs = 1;
  std::uint64_t seed = kDefaultSeed;
  bool check_oracle = false;
  KernelVariant kernel = KernelVariant::Auto;
};

/// Flat key=value lines ('#' starts a comment) or a JSON object.
RawConfig parse_config_text(const std::string& text);
RawConfig read_config_file(const std::string& path);

/// Runs one subcommand and writes <out>/<subcommand>.csv plus the matching
/// .json manifest. Returns 0 on success, 2 for configuration errors, 3 for
/// convergence failures and 1 otherwise; files of a failed run are removed.
int run(const RunOptions& opts, std::ostream& log);

}  // namespace floqreset::cli
