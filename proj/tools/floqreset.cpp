#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "floqreset/cli/run.hpp"
#include "floqreset/xy_kernel.hpp"

int main(int argc, char** argv) {
  using namespace floqreset;
  CLI::App app{"Floquet-driven spin chains under stochastic resetting"};
  app.set_version_flag("--version", cli::kVersion);
  app.require_subcommand(1, 1);

  cli::RunOptions opts;
  std::vector<std::string> sets;
  std::string kernel = "auto";
  const std::map<std::string, std::string> help = {
      {"xy-evolve", "XY stroboscopic time series, with or without reset"},
      {"xy-reset-curve", "XY steady concurrence versus reset rate"},
      {"xy-freq-map", "XY r_c and r_m over a frequency grid"},
      {"xy-amp-map", "XY concurrence over drive amplitude and frequency"},
      {"pxp-evolve", "PXP stroboscopic time series"},
      {"pxp-reset-curve", "PXP steady concurrence versus reset rate"},
      {"pxp-freq-map", "PXP r_c and r_m over a frequency grid"},
      {"fpt-eval", "Floquet perturbation theory terms and errors"},
      {"selftest", "quick internal consistency checks"}};
  for (const auto& name : cli::subcommands()) {
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("--config,-c", opts.config_path, "key=value or JSON config file");
    sub->add_option("--set", sets, "override one key, e.g. --set r=0.4")->take_all();
    sub->add_option("--out,-o", opts.out_dir, "output directory")->capture_default_str();
    sub->add_option("--jobs,-j", opts.jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);
    sub->add_option("--seed", opts.seed, "seed for stochastic checks")->capture_default_str();
    sub->add_flag("--check-oracle", opts.check_oracle, "cross-check against brute-force evolution");
    sub->add_option("--kernel", kernel, "momentum kernel")->check(CLI::IsMember({"auto", "scalar", "avx2"}));
    sub->callback([&opts, name] { opts.subcommand = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "error: --set expects key=value, got '" << kv << "'\n";
      return 2;
    }
    opts.overrides[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  opts.kernel = kernel == "scalar" ? KernelVariant::Scalar
                : kernel == "avx2" ? KernelVariant::Avx2
                                   : KernelVariant::Auto;
  return cli::run(opts, std::cerr);
}
