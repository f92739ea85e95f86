#pragma once

// Steady concurrence under resetting as a function of the reset rate, and
// the critical (r_c) and optimal (r_m) rates extracted from it.

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "floqreset/pxp.hpp"
#include "floqreset/reset.hpp"

namespace floqreset {

/// Concurrence at or below this counts as zero.
inline constexpr double kConcurrenceThreshold = 1e-6;
/// Target bracket width when refining r_c and r_m.
inline constexpr double kRateResolution = 1e-3;

/// Steady concurrence as a function of r.
using SteadyEvaluator = std::function<double(double r)>;

struct ConcurrenceCurve {
  Model model = Model::XY;
  double lambda0 = 0.0;
  double omega = 0.0;
  std::vector<double> r;
  std::vector<double> C;
};

struct CriticalRates {
  std::optional<double> r_c;
  std::optional<double> r_m;
  double C_max = 0.0;
};

ConcurrenceCurve steady_concurrence_curve(const SteadyEvaluator& eval, const std::vector<double>& r_grid,
                                          Model model = Model::XY, double lambda0 = 0.0,
                                          double omega = 0.0);

/// Smallest r with C > threshold. 0 when the first sample is already above
/// threshold, none when no sample is. With an evaluator the bracketing grid
/// interval is bisected to kRateResolution and its midpoint returned.
std::optional<double> find_rc(const ConcurrenceCurve& curve, const SteadyEvaluator* eval = nullptr);

/// Grid argmax refined by golden-section search to kRateResolution.
/// Returns (r_m, C_max), or none when the curve never exceeds threshold.
std::optional<std::pair<double, double>> find_rm(const ConcurrenceCurve& curve,
                                                 const SteadyEvaluator* eval = nullptr);

CriticalRates critical_rates(const ConcurrenceCurve& curve, const SteadyEvaluator* eval = nullptr);

/// XY steady concurrence for spins l apart, from the reset steady-state transforms.
class XYSteadyModel {
 public:
  XYSteadyModel(XYContext ctx, int l) : ctx_(std::move(ctx)), l_(l) {}
  double operator()(double r) const;
  XState xstate(double r) const;
  const XYContext& context() const { return ctx_; }

 private:
  XYContext ctx_;
  int l_;
};

struct PXPSteadyOptions {
  int window_lo = 1001;
  int window_hi = 1100;
  long m_min = 300;
  double convergence_tol = 1e-5;
  long m_cap = 1L << 18;
};

/// PXP reset steady state from a cached history of two-spin rdms. Not
/// thread-safe; use one instance per worker.
class PXPSteadyModel {
 public:
  PXPSteadyModel(std::shared_ptr<const PXPSystem> system, double w, double lambda0, double omega,
                 PXPSteadyOptions opts = {});

  /// Concurrence of the reset-averaged rdm at the converged m_ss; at r = 0
  /// the concurrence of the window-averaged rdm.
  double operator()(double r);
  /// Reset-averaged rdm at cycle m.
  TwoSpinDensityMatrix reset_rho(double r, long m);
  /// rdm at cycle m (no reset).
  const TwoSpinDensityMatrix& rho(long m);
  /// Mean over the window of the per-cycle concurrence.
  double prethermal_concurrence();
  /// Mean over the window of the single-site entropy.
  double prethermal_entropy();
  /// Cycle count used for the last steady-state evaluation.
  long last_m_ss() const { return last_m_ss_; }
  double period() const { return F_.period; }

 private:
  void extend(long m);

  std::shared_ptr<const PXPSystem> system_;
  PXPSteadyOptions opts_;
  FloquetOperator F_;
  Eigen::VectorXcd c0_;
  std::vector<TwoSpinDensityMatrix> history_;
  long last_m_ss_ = 0;
};

struct FrequencyRow {
  double omega = 0.0;
  CriticalRates rates;
  /// PXP only: window-averaged concurrence without reset.
  double prethermal_C = 0.0;
};

/// One evaluator per frequency; rows come back in grid order.
std::vector<FrequencyRow> frequency_map(
    const std::function<FrequencyRow(double omega, const std::vector<double>& r_grid)>& per_frequency,
    const std::vector<double>& omega_grid, const std::vector<double>& r_grid, int jobs);

/// r_c, r_m and C_max for one XY frequency.
FrequencyRow xy_frequency_row(const XYContext& base, int l, double omega, const std::vector<double>& r_grid);

/// r_c, r_m, C_max and prethermal concurrence for one PXP frequency.
FrequencyRow pxp_frequency_row(std::shared_ptr<const PXPSystem> system, double w, double lambda0,
                               double omega, const std::vector<double>& r_grid,
                               const PXPSteadyOptions& opts = {});

struct AmplitudeCell {
  double lambda0 = 0.0;
  double omega = 0.0;
  double C_at_r = 0.0;
  CriticalRates rates;
};

/// XY steady concurrence over a (lambda0, omega) grid.
std::vector<AmplitudeCell> xy_amplitude_map(const XYContext& base, int l,
                                            const std::vector<double>& lambda0_grid,
                                            const std::vector<double>& omega_grid, double r,
                                            const std::vector<double>& r_grid, int jobs);

}  // namespace floqreset
