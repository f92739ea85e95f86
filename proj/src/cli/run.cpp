#include "floqreset/cli/run.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "floqreset/analysis.hpp"
#include "floqreset/cli/csv.hpp"
#include "floqreset/fpt.hpp"
#include "floqreset/parallel.hpp"
#include "floqreset/xy_kernel.hpp"

namespace floqreset::cli {

using nlohmann::json;
namespace fs = std::filesystem;

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"xy-evolve",       "xy-reset-curve", "xy-freq-map",
                                                 "xy-amp-map",      "pxp-evolve",     "pxp-reset-curve",
                                                 "pxp-freq-map",    "fpt-eval",       "selftest"};
  return names;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

std::string json_scalar(const json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format_double(v.get<double>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  throw Error(ErrorCode::InvalidValue, "unsupported JSON value for key '" + key + "'");
}

struct Output {
  CsvTable table;
  json results = json::object();
};

std::string units_rate(const ValidatedConfig& cfg) { return cfg.units().rate_label(); }
std::string units_time(const ValidatedConfig& cfg) { return cfg.units().time_label(); }
std::string units_energy(const ValidatedConfig& cfg) {
  return std::string("[") + cfg.units().energy_unit() + "]";
}

json rates_json(const CriticalRates& r) {
  json j;
  j["r_c"] = r.r_c ? json(*r.r_c) : json(nullptr);
  j["r_m"] = r.r_m ? json(*r.r_m) : json(nullptr);
  j["C_max"] = r.C_max;
  return j;
}

XYContext xy_context(const ValidatedConfig& cfg, const RunOptions& opts) {
  XYContext ctx;
  ctx.params = cfg.xy;
  ctx.drive = cfg.drive;
  ctx.quad.nodes = cfg.quadrature_n;
  ctx.quad.tol = cfg.tolerance;
  ctx.kernel = opts.kernel;
  return ctx;
}

std::vector<double> frequencies(const ValidatedConfig& cfg) {
  return cfg.omega_grid.empty() ? std::vector<double>{cfg.drive.omega()} : cfg.omega_grid;
}

// ---------------------------------------------------------------- XY

Output xy_evolve(const ValidatedConfig& cfg, const RunOptions& opts) {
  const XYContext ctx = xy_context(cfg, opts);
  const double T = cfg.period();
  Output out{CsvTable({"m[cycles]", "t" + units_time(cfg), "alpha0[1]", "S[nats]", "C_1[1]", "C_2[1]"})};
  const double r = cfg.reset.r;
  double oracle_diff = 0.0;
  for (long m = 0; m <= cfg.m_max; ++m) {
    const TimeSpec spec = r > 0 ? TimeSpec::reset_at(r, m) : TimeSpec::cycle(m);
    const TransformSet t = transforms(ctx, spec);
    out.table.add_numbers({static_cast<double>(m), m * T, t.alpha0, single_spin_entropy(t.alpha0),
                           concurrence_xstate(xy_two_spin_rdm(1, t)),
                           concurrence_xstate(xy_two_spin_rdm(2, t))});
    if (opts.check_oracle) {
      const int L = cfg.xy.L.value_or(64);
      for (int n = 1; n <= L / 2; ++n) {
        const MomentumMode mode((2.0 * n - 1.0) * std::numbers::pi / L, cfg.xy);
        const FloquetMode fm = floquet_mode(mode, cfg.drive);
        const auto dec = correlator_decomposition(fm, ModeState::vacuum());
        Correlators ref, fast = correlators_at(dec, fm, spec, T);
        if (r > 0) ref = reset_average_explicit(dec, fm, r, T, m);
        else ref = correlators_of_state(evolve_mode_oracle(mode, cfg.drive, m, ModeState::vacuum()));
        oracle_diff = std::max({oracle_diff, std::abs(ref.d - fast.d), std::abs(ref.o - fast.o)});
      }
    }
  }
  if (opts.check_oracle) {
    out.results["oracle_max_abs_diff"] = oracle_diff;
    if (oracle_diff > 1e-9) throw std::runtime_error("closed-form correlators disagree with the oracle");
  }
  return out;
}

Output xy_reset_curve(const ValidatedConfig& cfg, const RunOptions& opts) {
  const XYSteadyModel model(xy_context(cfg, opts), cfg.separation);
  const std::vector<double>& grid = cfg.r_grid;
  const auto C = parallel_map<double>(grid.size(), opts.jobs, [&](std::size_t i) { return model(grid[i]); });
  ConcurrenceCurve curve{Model::XY, cfg.drive.lambda0(), cfg.drive.omega(), grid, C};
  const SteadyEvaluator eval = [&](double r) { return model(r); };
  const CriticalRates rates = critical_rates(curve, &eval);
  Output out{CsvTable({"r" + units_rate(cfg), "C_r_st[1]"})};
  for (std::size_t i = 0; i < grid.size(); ++i) out.table.add_numbers({grid[i], C[i]});
  out.results = rates_json(rates);
  return out;
}

Output xy_freq_map(const ValidatedConfig& cfg, const RunOptions& opts) {
  const XYContext ctx = xy_context(cfg, opts);
  const auto rows = frequency_map(
      [&](double omega, const std::vector<double>& grid) {
        return xy_frequency_row(ctx, cfg.separation, omega, grid);
      },
      frequencies(cfg), cfg.r_grid, opts.jobs);
  Output out{CsvTable({"omega_D" + units_rate(cfg), "omega_ratio[1]", "r_c" + units_rate(cfg),
                       "r_m" + units_rate(cfg), "C_max[1]"})};
  for (const auto& row : rows)
    out.table.add_row({format_double(row.omega), format_double(row.omega / cfg.drive.lambda0()),
                       format_optional(row.rates.r_c), format_optional(row.rates.r_m),
                       format_double(row.rates.C_max)});
  json sf = json::array();
  for (const auto& s : special_frequencies(cfg.drive.lambda0(), cfg.xy, cfg.n_max))
    sf.push_back({{"n", s.n}, {"omega_star", s.omega_star}, {"omega_shifted", s.omega_shifted}});
  out.results["special_frequencies"] = sf;
  return out;
}

Output xy_amp_map(const ValidatedConfig& cfg, const RunOptions& opts) {
  const std::vector<double> l0 =
      cfg.lambda0_grid.empty() ? std::vector<double>{cfg.drive.lambda0()} : cfg.lambda0_grid;
  const auto cells = xy_amplitude_map(xy_context(cfg, opts), cfg.separation, l0, frequencies(cfg),
                                      cfg.reset.r, cfg.r_grid, opts.jobs);
  Output out{CsvTable({"lambda0" + units_energy(cfg), "omega_D" + units_rate(cfg), "C_r_st[1]",
                       "r_m" + units_rate(cfg), "C_max[1]"})};
  for (const auto& c : cells)
    out.table.add_row({format_double(c.lambda0), format_double(c.omega), format_double(c.C_at_r),
                       format_optional(c.rates.r_m), format_double(c.rates.C_max)});
  out.results["r"] = cfg.reset.r;
  return out;
}

// ---------------------------------------------------------------- PXP

PXPSteadyOptions pxp_options(const ValidatedConfig& cfg) {
  PXPSteadyOptions o;
  o.window_lo = cfg.window_lo;
  o.window_hi = cfg.window_hi;
  return o;
}

Output pxp_evolve(const ValidatedConfig& cfg, const RunOptions& opts) {
  const PXPSystem sys(cfg.pxp.L, cfg.separation, cfg.dressing);
  const double T = cfg.period();
  const FloquetOperator F = sys.floquet(cfg.pxp.w, cfg.drive.lambda0(), T);
  const Eigen::VectorXcd psi0 = sys.initial_state();
  const long M = cfg.m_max;

  std::vector<TwoSpinDensityMatrix> pair(M + 1);
  std::vector<Eigen::Matrix2cd> site(M + 1);
  std::vector<Eigen::VectorXcd> states;
  for (long m = 0; m <= M; ++m) {
    const Eigen::VectorXcd psi = stroboscopic_state(F, psi0, m);
    pair[m] = sys.pair_rdm(psi);
    site[m] = sys.site_rdm(psi);
    if (opts.check_oracle) states.push_back(psi);
  }

  Output out{CsvTable({"m[cycles]", "t" + units_time(cfg), "S[nats]", "C_2[1]"})};
  std::vector<double> S(M + 1), C(M + 1);
  const double r = cfg.reset.r;
  for (long m = 0; m <= M; ++m) {
    TwoSpinDensityMatrix rho = pair[m];
    Eigen::Matrix2cd rho1 = site[m];
    if (r > 0) {
      const ResetWeights w = reset_weights(r, T, m);
      rho.setZero();
      rho1.setZero();
      for (long q = 0; q <= m; ++q) {
        rho += w(q) * pair[q];
        rho1 += w(q) * site[q];
      }
    }
    S[m] = von_neumann_entropy(rho1);
    C[m] = concurrence_general(rho);
    out.table.add_numbers({static_cast<double>(m), m * T, S[m], C[m]});
  }

  if (opts.check_oracle) {
    const int L = cfg.pxp.L;
    if (L > 14) throw Error(ErrorCode::SizeOutOfRange, "full-space cross-check supports L <= 14");
    const ConstrainedBasis& basis = sys.basis();
    const FloquetOperator Ff = floquet_operator(build_pxp_hamiltonian_full(basis, cfg.pxp.w, cfg.drive.lambda0()),
                                                build_pxp_hamiltonian_full(basis, cfg.pxp.w, -cfg.drive.lambda0()), T);
    const PairRdmPlan full_pair(basis, 0, cfg.separation, cfg.dressing);
    const SiteRdmPlan full_site(basis, 0);
    const PairRdmPlan shifted_a(basis, 1, 1 + cfg.separation, cfg.dressing);
    const PairRdmPlan shifted_b(basis, L / 2, (L / 2 + cfg.separation) % L, cfg.dressing);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
    psi(basis.index(0)) = 1.0;
    double dS = 0.0, dC = 0.0, dT = 0.0;
    std::vector<TwoSpinDensityMatrix> full_pairs;
    std::vector<Eigen::Matrix2cd> full_sites;
    for (long m = 0; m <= M; ++m) {
      full_pairs.push_back(full_pair(psi));
      full_sites.push_back(full_site(psi));
      const Eigen::VectorXcd expanded = sys.sector().expand(states[m]);
      const TwoSpinDensityMatrix base = full_pair(expanded);
      dT = std::max({dT, (shifted_a(expanded) - base).cwiseAbs().maxCoeff(),
                     (shifted_b(expanded) - base).cwiseAbs().maxCoeff()});
      psi = Ff.U * psi;
    }
    for (long m = 0; m <= M; ++m) {
      TwoSpinDensityMatrix rho = full_pairs[m];
      Eigen::Matrix2cd rho1 = full_sites[m];
      if (r > 0) {
        const ResetWeights w = reset_weights(r, T, m);
        rho.setZero();
        rho1.setZero();
        for (long q = 0; q <= m; ++q) {
          rho += w(q) * full_pairs[q];
          rho1 += w(q) * full_sites[q];
        }
      }
      dS = std::max(dS, std::abs(von_neumann_entropy(rho1) - S[m]));
      dC = std::max(dC, std::abs(concurrence_general(rho) - C[m]));
    }
    out.results["oracle_max_abs_diff_S"] = dS;
    out.results["oracle_max_abs_diff_C"] = dC;
    out.results["translation_max_abs_diff"] = dT;
    if (std::max({dS, dC, dT}) > 1e-9) throw std::runtime_error("sector ED disagrees with the full-space oracle");
  }
  return out;
}

Output pxp_reset_curve(const ValidatedConfig& cfg, const RunOptions&) {
  auto sys = std::make_shared<const PXPSystem>(cfg.pxp.L, cfg.separation, cfg.dressing);
  PXPSteadyModel model(sys, cfg.pxp.w, cfg.drive.lambda0(), cfg.drive.omega(), pxp_options(cfg));
  const SteadyEvaluator eval = [&](double r) { return model(r); };
  Output out{CsvTable({"r" + units_rate(cfg), "C_r_st[1]", "m_ss[cycles]"})};
  ConcurrenceCurve curve{Model::PXP, cfg.drive.lambda0(), cfg.drive.omega(), cfg.r_grid, {}};
  for (double r : cfg.r_grid) {
    curve.C.push_back(model(r));
    out.table.add_numbers({r, curve.C.back(), static_cast<double>(model.last_m_ss())});
  }
  out.results = rates_json(critical_rates(curve, &eval));
  out.results["prethermal_C"] = model.prethermal_concurrence();
  return out;
}

Output pxp_freq_map(const ValidatedConfig& cfg, const RunOptions& opts) {
  auto sys = std::make_shared<const PXPSystem>(cfg.pxp.L, cfg.separation, cfg.dressing);
  const PXPSteadyOptions popts = pxp_options(cfg);
  const auto rows = frequency_map(
      [&](double omega, const std::vector<double>& grid) {
        return pxp_frequency_row(sys, cfg.pxp.w, cfg.drive.lambda0(), omega, grid, popts);
      },
      frequencies(cfg), cfg.r_grid, opts.jobs);
  Output out{CsvTable({"omega_D" + units_rate(cfg), "omega_ratio[1]", "C_preth[1]", "r_c" + units_rate(cfg),
                       "r_m" + units_rate(cfg), "C_max[1]"})};
  for (const auto& row : rows)
    out.table.add_row({format_double(row.omega), format_double(row.omega / cfg.drive.lambda0()),
                       format_double(row.prethermal_C), format_optional(row.rates.r_c),
                       format_optional(row.rates.r_m), format_double(row.rates.C_max)});
  return out;
}

// ---------------------------------------------------------------- FPT

Output fpt_eval(const ValidatedConfig& cfg, const RunOptions&) {
  json sf = json::array();
  if (cfg.model == Model::PXP) {
    const auto c = pxp_fpt_coefficients(cfg.drive, cfg.pxp);
    Output out{CsvTable({"gamma[1]", "amplitude[w]", "phase[rad]", "A0_re[w]", "A0_im[w]"})};
    out.table.add_numbers({c.gamma, c.amplitude, c.phase, c.A0.real(), c.A0.imag()});
    for (int n = 1; n <= cfg.n_max; ++n) sf.push_back({{"n", n}, {"omega_star", cfg.drive.lambda0() / n}});
    out.results["special_frequencies"] = sf;
    return out;
  }
  Output out{CsvTable({"k[1]", "hf1_x[J]", "hf1_y[J]", "hf1_z[J]", "hf3_x[J]", "hf3_y[J]", "hf3_z[J]",
                       "exact_x[J]", "exact_y[J]", "exact_z[J]", "err_first[J]", "err_third[J]"})};
  for (int i = 0; i < cfg.k_points; ++i) {
    const MomentumMode mode((i + 0.5) * std::numbers::pi / cfg.k_points, cfg.xy);
    const Eigen::Matrix2cd h1 = xy_hf1(mode, cfg.drive);
    const Eigen::Matrix2cd h3 = xy_hf3(mode, cfg.drive);
    const Eigen::Matrix2cd ex = xy_exact_floquet_hamiltonian(mode, cfg.drive);
    const Eigen::Vector3d a = pauli_components(h1), b = pauli_components(h3), e = pauli_components(ex);
    out.table.add_numbers({mode.k, a.x(), a.y(), a.z(), b.x(), b.y(), b.z(), e.x(), e.y(), e.z(),
                           (ex - h1).norm(), (ex - h1 - h3).norm()});
  }
  for (const auto& s : special_frequencies(cfg.drive.lambda0(), cfg.xy, cfg.n_max))
    sf.push_back({{"n", s.n}, {"omega_star", s.omega_star}, {"omega_shifted", s.omega_shifted}});
  out.results["special_frequencies"] = sf;
  return out;
}

// ---------------------------------------------------------------- selftest

Output selftest(const RunOptions& opts) {
  Output out{CsvTable({"check", "passed", "detail"})};
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  bool all = true;
  auto record = [&](const std::string& name, bool ok, double detail) {
    out.table.add_row({name, ok ? "true" : "false", format_double(detail)});
    all = all && ok;
  };

  {
    RawConfig raw{{"model", "XY"}, {"kappa", "0.7"}, {"lambda0", "10"}, {"omega_ratio", "0.8"}, {"r", "0.4"}};
    const ValidatedConfig a = validate_config(raw);
    record("config_round_trip", validate_config(serialize_config(a)) == a, 0.0);
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const MomentumMode mode(std::numbers::pi * (0.01 + 0.98 * U(rng)), 1.0, -1.0 + 2.0 * U(rng));
      const DriveProtocol d = DriveProtocol::from_ratio(10.0, 0.2 + 1.3 * U(rng));
      const ModeState a = evolve_mode_exact(mode, d, 1000, ModeState::vacuum());
      const ModeState b = evolve_mode_oracle(mode, d, 1000, ModeState::vacuum());
      worst = std::max({worst, std::abs(a.u - b.u), std::abs(a.v - b.v)});
    }
    record("xy_mode_oracle", worst < 1e-10, worst);
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const DriveProtocol d = DriveProtocol::from_ratio(10.0, 0.3 + U(rng));
      const FloquetMode fm = floquet_mode(MomentumMode(3.0 * U(rng) + 0.05, 1.0, 0.7), d);
      const auto dec = correlator_decomposition(fm, ModeState::vacuum());
      const double r = 2.0 * U(rng);
      const Correlators a = reset_average_correlators(dec, fm, r, d.period(), 50);
      const Correlators b = reset_average_explicit(dec, fm, r, d.period(), 50);
      worst = std::max({worst, std::abs(a.d - b.d), std::abs(a.o - b.o)});
    }
    record("reset_closed_form", worst < 1e-12, worst);
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      XState x;
      double p[3] = {U(rng), U(rng), U(rng)};
      const double s = p[0] + 2.0 * p[1] + p[2];
      x.a_plus = p[0] / s;
      x.a_0 = p[1] / s;
      x.a_minus = p[2] / s;
      x.b_1 = std::polar(std::sqrt(x.a_plus * x.a_minus) * U(rng), 6.283 * U(rng));
      x.b_2 = std::polar(x.a_0 * U(rng), 6.283 * U(rng));
      worst = std::max(worst, std::abs(concurrence_xstate(x) - concurrence_general(x.matrix())));
    }
    record("xstate_vs_wootters", worst < 1e-12, worst);
  }
  {
    const PXPSystem sys(8, 2, Dressing::Plain);
    const double T = 2.0 * std::numbers::pi / 5.0;
    const FloquetOperator Fs = sys.floquet(1.0, 10.0, T);
    const FloquetOperator Ff = floquet_operator(build_pxp_hamiltonian_full(sys.basis(), 1.0, 10.0),
                                                build_pxp_hamiltonian_full(sys.basis(), 1.0, -10.0), T);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < Fs.theta.size(); ++i) {
      double best = 10.0;
      for (Eigen::Index j = 0; j < Ff.theta.size(); ++j)
        best = std::min(best, std::abs(std::polar(1.0, Fs.theta(i)) - std::polar(1.0, Ff.theta(j))));
      worst = std::max(worst, best);
    }
    record("pxp_sector_phases", worst < 1e-10, worst);
  }
  {
    const DriveProtocol d(10.0, 10.0);  // alpha = pi
    const Eigen::Matrix2cd h = xy_hf1(MomentumMode(1.1, 1.0, 0.7), d);
    Eigen::Matrix2cd tz;
    tz << 1, 0, 0, -1;
    const double c = (h * tz - tz * h).norm();
    record("fpt_commutator", c < 1e-14, c);
  }
  {
    XYContext ctx;
    ctx.params.kappa = 0.7;
    ctx.drive = DriveProtocol::from_ratio(10.0, 0.8);
    ctx.kernel = KernelVariant::Scalar;
    const TransformSet a = transforms(ctx, TimeSpec::reset_steady(0.4));
    ctx.kernel = KernelVariant::Avx2;
    const TransformSet b = transforms(ctx, TimeSpec::reset_steady(0.4));
    const double d = std::max({std::abs(a.alpha0 - b.alpha0), std::abs(a.alpha2 - b.alpha2), std::abs(a.F2 - b.F2)});
    record("kernel_equivalence", d < 1e-12, d);
  }
  out.results["all_passed"] = all;
  if (!all) throw std::runtime_error("selftest failed");
  return out;
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

ValidatedConfig load_config(const RunOptions& opts) {
  RawConfig raw;
  if (opts.config_path) raw = read_config_file(*opts.config_path);
  for (const auto& [k, v] : opts.overrides) raw[k] = v;
  const std::string& sub = opts.subcommand;
  std::string model;
  if (sub.rfind("xy-", 0) == 0) model = "XY";
  if (sub.rfind("pxp-", 0) == 0) model = "PXP";
  if (!model.empty()) {
    auto it = raw.find("model");
    if (it == raw.end()) raw["model"] = model;
    else if (trim(it->second) != model && trim(it->second) != (model == "XY" ? "xy" : "pxp"))
      throw Error(ErrorCode::InvalidValue, "subcommand " + sub + " needs model = " + model);
  }
  return validate_config(raw);
}

}  // namespace

RawConfig parse_config_text(const std::string& text) {
  RawConfig raw;
  const std::string t = trim(text);
  if (!t.empty() && t.front() == '{') {
    json j;
    try {
      j = json::parse(t);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::InvalidValue, std::string("malformed JSON config: ") + e.what());
    }
    for (const auto& [k, v] : j.items()) {
      if (v.is_array()) {
        std::string joined;
        for (std::size_t i = 0; i < v.size(); ++i) joined += (i ? "," : "") + json_scalar(v[i], k);
        raw[k] = joined;
      } else {
        raw[k] = json_scalar(v, k);
      }
    }
    return raw;
  }
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::InvalidValue, "line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (raw.count(key)) throw Error(ErrorCode::InvalidValue, "duplicate key '" + key + "'");
    raw[key] = trim(line.substr(eq + 1));
  }
  return raw;
}

RawConfig read_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::MissingKey, "cannot open config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

int run(const RunOptions& opts, std::ostream& log) {
  const auto start = std::chrono::steady_clock::now();
  const fs::path dir(opts.out_dir);
  const fs::path csv_path = dir / (opts.subcommand + ".csv");
  const fs::path json_path = dir / (opts.subcommand + ".json");
  auto cleanup = [&] {
    std::error_code ec;
    fs::remove(csv_path, ec);
    fs::remove(json_path, ec);
  };
  try {
    if (std::find(subcommands().begin(), subcommands().end(), opts.subcommand) == subcommands().end())
      throw Error(ErrorCode::InvalidValue, "unknown subcommand '" + opts.subcommand + "'");
    if (opts.jobs < 1) throw Error(ErrorCode::InvalidValue, "--jobs must be >= 1");

    std::optional<ValidatedConfig> cfg;
    Output out{CsvTable({})};
    const std::string& sub = opts.subcommand;
    if (sub == "selftest") {
      out = selftest(opts);
    } else {
      cfg = load_config(opts);
      if (sub == "xy-evolve") out = xy_evolve(*cfg, opts);
      else if (sub == "xy-reset-curve") out = xy_reset_curve(*cfg, opts);
      else if (sub == "xy-freq-map") out = xy_freq_map(*cfg, opts);
      else if (sub == "xy-amp-map") out = xy_amp_map(*cfg, opts);
      else if (sub == "pxp-evolve") out = pxp_evolve(*cfg, opts);
      else if (sub == "pxp-reset-curve") out = pxp_reset_curve(*cfg, opts);
      else if (sub == "pxp-freq-map") out = pxp_freq_map(*cfg, opts);
      else if (sub == "fpt-eval") out = fpt_eval(*cfg, opts);
    }

    fs::create_directories(dir);
    out.table.write(csv_path.string());

    json m;
    m["tool"] = "floqreset";
    m["version"] = kVersion;
    m["subcommand"] = sub;
    if (cfg) {
      json c = json::object();
      for (const auto& [k, v] : serialize_config(*cfg)) c[k] = v;
      m["config"] = c;
      m["units"] = {{"hbar", 1},
                    {"energy", cfg->units().energy_unit()},
                    {"rate", cfg->units().rate_label()},
                    {"time", cfg->units().time_label()}};
      m["half_cycle_order"] = to_string(cfg->drive.order());
      m["derived"] = {{"T", cfg->period()}, {"alpha", cfg->alpha()}, {"p_r", cfg->reset_probability()}};
    }
    m["seed"] = opts.seed;
    m["check_oracle"] = opts.check_oracle;
    m["kernel"] = to_string(resolve_kernel(opts.kernel));
    m["C_threshold"] = kConcurrenceThreshold;
    m["results"] = out.results;
    m["outputs"] = {csv_path.filename().string(), json_path.filename().string()};
    m["timestamp"] = timestamp();
    m["wall_clock_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ofstream f(json_path);
    if (!f) throw std::runtime_error("cannot write " + json_path.string());
    f << m.dump(2) << "\n";
    if (!f) throw std::runtime_error("failed writing " + json_path.string());
    log << "wrote " << csv_path.string() << " (" << out.table.rows() << " rows)\n";
    return 0;
  } catch (const Error& e) {
    cleanup();
    log << "error: " << e.what() << "\n";
    if (is_config_error(e.code())) return 2;
    if (is_convergence_error(e.code())) return 3;
    return 1;
  } catch (const std::exception& e) {
    cleanup();
    log << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace floqreset::cli
