#include "floqreset/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "floqreset/parallel.hpp"

namespace floqreset {

ConcurrenceCurve steady_concurrence_curve(const SteadyEvaluator& eval, const std::vector<double>& r_grid,
                                          Model model, double lambda0, double omega) {
  if (r_grid.empty()) throw Error(ErrorCode::InvalidValue, "empty r grid");
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    if (r_grid[i] < 0) throw Error(ErrorCode::NegativeRate, "r must be >= 0");
    if (i && r_grid[i] <= r_grid[i - 1])
      throw Error(ErrorCode::InvalidValue, "r grid must be strictly increasing");
  }
  ConcurrenceCurve c{model, lambda0, omega, r_grid, {}};
  c.C.reserve(r_grid.size());
  for (double r : r_grid) c.C.push_back(eval(r));
  return c;
}

std::optional<double> find_rc(const ConcurrenceCurve& curve, const SteadyEvaluator* eval) {
  std::size_t i = 0;
  while (i < curve.C.size() && curve.C[i] <= kConcurrenceThreshold) ++i;
  if (i == curve.C.size()) return std::nullopt;
  if (i == 0) return 0.0;
  double lo = curve.r[i - 1], hi = curve.r[i];
  if (!eval) return hi;
  while (hi - lo > kRateResolution) {
    const double mid = 0.5 * (lo + hi);
    if ((*eval)(mid) > kConcurrenceThreshold) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

std::optional<std::pair<double, double>> find_rm(const ConcurrenceCurve& curve, const SteadyEvaluator* eval) {
  if (curve.C.empty()) return std::nullopt;
  const std::size_t n = curve.C.size();
  const std::size_t i = static_cast<std::size_t>(std::max_element(curve.C.begin(), curve.C.end()) - curve.C.begin());
  if (curve.C[i] <= kConcurrenceThreshold) return std::nullopt;
  std::pair<double, double> best{curve.r[i], curve.C[i]};
  if (!eval) return best;

  double a = curve.r[i == 0 ? 0 : i - 1];
  double b = curve.r[std::min(i + 1, n - 1)];
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = (*eval)(x1), f2 = (*eval)(x2);
  while (b - a > kRateResolution) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = (*eval)(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = (*eval)(x2);
    }
  }
  const double xm = 0.5 * (a + b);
  const double fm = (*eval)(xm);
  for (auto [x, f] : {std::pair{x1, f1}, std::pair{x2, f2}, std::pair{xm, fm}})
    if (f > best.second) best = {x, f};
  return best;
}

CriticalRates critical_rates(const ConcurrenceCurve& curve, const SteadyEvaluator* eval) {
  CriticalRates out;
  out.r_c = find_rc(curve, eval);
  if (auto m = find_rm(curve, eval)) {
    out.r_m = m->first;
    out.C_max = m->second;
  }
  return out;
}

XState XYSteadyModel::xstate(double r) const {
  return xy_two_spin_rdm(l_, transforms(ctx_, TimeSpec::reset_steady(r)));
}

double XYSteadyModel::operator()(double r) const { return concurrence_xstate(xstate(r)); }

PXPSteadyModel::PXPSteadyModel(std::shared_ptr<const PXPSystem> system, double w, double lambda0,
                               double omega, PXPSteadyOptions opts)
    : system_(std::move(system)), opts_(opts) {
  if (opts_.window_lo < 1 || opts_.window_hi < opts_.window_lo)
    throw Error(ErrorCode::EmptyWindow, "window needs 1 <= lo <= hi");
  F_ = system_->floquet(w, lambda0, 2.0 * std::numbers::pi / omega);
  c0_ = F_.Q.adjoint() * system_->initial_state();
}

void PXPSteadyModel::extend(long m) {
  if (m >= opts_.m_cap)
    throw Error(ErrorCode::SteadyStateNotConverged,
                "reset steady state needs more than " + std::to_string(opts_.m_cap) + " cycles");
  Eigen::VectorXcd c(c0_.size());
  for (long q = static_cast<long>(history_.size()); q <= m; ++q) {
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = c0_(i) * std::polar(1.0, static_cast<double>(q) * F_.theta(i));
    history_.push_back(system_->pair_rdm(F_.Q * c));
  }
}

const TwoSpinDensityMatrix& PXPSteadyModel::rho(long m) {
  extend(m);
  return history_[static_cast<std::size_t>(m)];
}

TwoSpinDensityMatrix PXPSteadyModel::reset_rho(double r, long m) {
  extend(m);
  const ResetWeights w = reset_weights(r, F_.period, m);
  TwoSpinDensityMatrix out = TwoSpinDensityMatrix::Zero();
  for (long q = 0; q <= m; ++q)
    if (w(q) != 0.0) out += w(q) * history_[static_cast<std::size_t>(q)];
  return out;
}

double PXPSteadyModel::operator()(double r) {
  if (r < 0) throw Error(ErrorCode::NegativeRate, "r must be >= 0");
  if (r == 0.0) {
    TwoSpinDensityMatrix avg = TwoSpinDensityMatrix::Zero();
    for (int m = opts_.window_lo; m <= opts_.window_hi; ++m) avg += rho(m);
    last_m_ss_ = opts_.window_hi;
    return concurrence_general(avg / (opts_.window_hi - opts_.window_lo + 1));
  }
  const double rT = r * F_.period;
  long m = std::max(opts_.m_min, static_cast<long>(std::ceil(10.0 / rT)));
  for (;;) {
    const double C = concurrence_general(reset_rho(r, m));
    const double C_half = concurrence_general(reset_rho(r, m / 2));
    if (std::abs(C - C_half) < opts_.convergence_tol) {
      last_m_ss_ = m;
      return C;
    }
    m *= 2;
  }
}

double PXPSteadyModel::prethermal_concurrence() {
  std::vector<double> series(static_cast<std::size_t>(opts_.window_hi) + 1, 0.0);
  for (int m = opts_.window_lo; m <= opts_.window_hi; ++m) series[m] = concurrence_general(rho(m));
  return prethermal_average(series, opts_.window_lo, opts_.window_hi);
}

double PXPSteadyModel::prethermal_entropy() {
  std::vector<double> series(static_cast<std::size_t>(opts_.window_hi) + 1, 0.0);
  for (int m = opts_.window_lo; m <= opts_.window_hi; ++m)
    series[m] = von_neumann_entropy(system_->site_rdm(stroboscopic_state(F_, system_->initial_state(), m)));
  return prethermal_average(series, opts_.window_lo, opts_.window_hi);
}

std::vector<FrequencyRow> frequency_map(
    const std::function<FrequencyRow(double omega, const std::vector<double>& r_grid)>& per_frequency,
    const std::vector<double>& omega_grid, const std::vector<double>& r_grid, int jobs) {
  if (omega_grid.empty()) throw Error(ErrorCode::InvalidValue, "empty frequency grid");
  return parallel_map<FrequencyRow>(omega_grid.size(), jobs,
                                    [&](std::size_t i) { return per_frequency(omega_grid[i], r_grid); });
}

FrequencyRow xy_frequency_row(const XYContext& base, int l, double omega, const std::vector<double>& r_grid) {
  XYContext ctx = base;
  ctx.drive = DriveProtocol(base.drive.lambda0(), omega);
  const XYSteadyModel model(ctx, l);
  const SteadyEvaluator eval = [&](double r) { return model(r); };
  const ConcurrenceCurve curve = steady_concurrence_curve(eval, r_grid, Model::XY, ctx.drive.lambda0(), omega);
  return {omega, critical_rates(curve, &eval), 0.0};
}

FrequencyRow pxp_frequency_row(std::shared_ptr<const PXPSystem> system, double w, double lambda0,
                               double omega, const std::vector<double>& r_grid,
                               const PXPSteadyOptions& opts) {
  PXPSteadyModel model(std::move(system), w, lambda0, omega, opts);
  const SteadyEvaluator eval = [&](double r) { return model(r); };
  const ConcurrenceCurve curve = steady_concurrence_curve(eval, r_grid, Model::PXP, lambda0, omega);
  FrequencyRow row{omega, critical_rates(curve, &eval), 0.0};
  row.prethermal_C = model.prethermal_concurrence();
  return row;
}

std::vector<AmplitudeCell> xy_amplitude_map(const XYContext& base, int l,
                                            const std::vector<double>& lambda0_grid,
                                            const std::vector<double>& omega_grid, double r,
                                            const std::vector<double>& r_grid, int jobs) {
  const std::size_t nw = omega_grid.size();
  return parallel_map<AmplitudeCell>(lambda0_grid.size() * nw, jobs, [&](std::size_t idx) {
    XYContext ctx = base;
    const double l0 = lambda0_grid[idx / nw];
    const double omega = omega_grid[idx % nw];
    ctx.drive = DriveProtocol(l0, omega);
    const XYSteadyModel model(ctx, l);
    const SteadyEvaluator eval = [&](double rr) { return model(rr); };
    AmplitudeCell cell{l0, omega, model(r), {}};
    if (!r_grid.empty()) cell.rates = critical_rates(steady_concurrence_curve(eval, r_grid), &eval);
    return cell;
  });
}

}  // namespace floqreset
