#include "floqreset/xy_correlators.hpp"

#include <cmath>
#include <numbers>

#include "floqreset/xy_kernel.hpp"

namespace floqreset {

namespace {

const cplx I1{0.0, 1.0};

// Closed geometric sums break down for |Z| below this.
constexpr double kZGuard = 1e-8;

}  // namespace

CorrelatorDecomposition correlator_decomposition(const FloquetMode& fm, const ModeState& init) {
  // psi(m) = cos(chi) A + sin(chi) B with A = psi0, B = -i (n.tau) psi0.
  const Eigen::Vector3d& n = fm.n;
  const cplx Au = init.u, Av = init.v;
  const cplx Bu = -I1 * (n.z() * Au + cplx(n.x(), -n.y()) * Av);
  const cplx Bv = -I1 * (cplx(n.x(), n.y()) * Au - n.z() * Av);

  CorrelatorDecomposition dec;
  dec.d.gge = 0.5 * (std::norm(Av) + std::norm(Bv));
  dec.d.odd = std::real(std::conj(Av) * Bv);
  dec.d.even = 0.5 * (std::norm(Av) - std::norm(Bv));
  dec.o.gge = 0.5 * (std::conj(Au) * Av + std::conj(Bu) * Bv);
  dec.o.odd = 0.5 * (std::conj(Au) * Bv + std::conj(Bu) * Av);
  dec.o.even = 0.5 * (std::conj(Au) * Av - std::conj(Bu) * Bv);
  return dec;
}

CorrelatorDecomposition correlator_decomposition(const MomentumMode& mode, const DriveProtocol& drive,
                                                 const ModeState& init) {
  return correlator_decomposition(floquet_mode(mode, drive), init);
}

Correlators correlators_at_cycle(const CorrelatorDecomposition& dec, const FloquetMode& fm, long m) {
  const double chi = static_cast<double>(m) * fm.phase;
  return {dec.d.at(chi), dec.o.at(chi)};
}

Correlators correlators_of_state(const ModeState& s) { return {std::norm(s.v), std::conj(s.u) * s.v}; }

TimeFactors time_factors(const TimeSpec& spec, double phase, double period) {
  switch (spec.kind) {
    case TimeSpec::Kind::GGE:
      return {};
    case TimeSpec::Kind::Cycle: {
      const double a = 2.0 * static_cast<double>(spec.m) * phase;
      return {std::sin(a), std::cos(a)};
    }
    case TimeSpec::Kind::ResetAt: {
      const double rT = spec.r * period;
      const double p = -std::expm1(-rT);
      const double decay = std::exp(-rT);
      const double keep = std::exp(-rT * static_cast<double>(spec.m));
      const double a = 2.0 * static_cast<double>(spec.m) * phase;
      const double sth = std::sin(phase);
      const cplx Z(p + decay * 2.0 * sth * sth, -decay * std::sin(2.0 * phase));
      cplx S;
      if (std::abs(Z) < kZGuard) {
        const cplx x = std::polar(decay, 2.0 * phase);
        cplx xq = 1.0;
        for (long q = 0; q < spec.m; ++q) {
          S += xq;
          xq *= x;
        }
      } else {
        S = (1.0 - std::polar(keep, a)) / Z;
      }
      return {p * S.imag() + keep * std::sin(a), p * S.real() + keep * std::cos(a)};
    }
    case TimeSpec::Kind::ResetSteady: {
      if (spec.r == 0.0) return {};
      const double rT = spec.r * period;
      const double p = -std::expm1(-rT);
      const double decay = std::exp(-rT);
      const double sth = std::sin(phase);
      const cplx Z(p + decay * 2.0 * sth * sth, -decay * std::sin(2.0 * phase));
      const cplx q = p / Z;
      return {q.imag(), q.real()};
    }
  }
  return {};
}

Correlators correlators_at(const CorrelatorDecomposition& dec, const FloquetMode& fm,
                           const TimeSpec& spec, double period) {
  const TimeFactors f = time_factors(spec, fm.phase, period);
  return {dec.d.combine(f.odd, f.even), dec.o.combine(f.odd, f.even)};
}

cplx TransformSet::alpha(int p) const {
  switch (std::abs(p)) {
    case 0: return alpha0;
    case 1: return alpha1;
    case 2: return alpha2;
  }
  throw Error(ErrorCode::UnsupportedSeparation, "alpha_p is available for |p| <= 2");
}

cplx TransformSet::F(int p) const {
  if (p == 1) return F1;
  if (p == 2) return F2;
  throw Error(ErrorCode::UnsupportedSeparation, "F_p is available for p in {1, 2}");
}

TransformSet transforms(const XYContext& ctx, const TimeSpec& spec, QuadratureStats* stats) {
  const XYKernelInput in{ctx.params.J, ctx.params.kappa, ctx.drive.lambda0(), ctx.drive.period(), spec};
  const XYKernelFn fn = kernel_function(resolve_kernel(ctx.kernel));
  std::vector<double> acc(kMomentCount, 0.0);
  double scale = 1.0 / std::numbers::pi;

  if (ctx.params.L) {
    const int L = *ctx.params.L;
    std::vector<double> ks, ws;
    for (int n = 1; n <= L / 2; ++n) {
      ks.push_back((2.0 * n - 1.0) * std::numbers::pi / L);
      ws.push_back(1.0);
    }
    fn(in, ks.data(), ws.data(), ks.size(), acc.data());
    scale = 2.0 / L;
    if (stats) {
      stats->panels = 0;
      stats->evaluations = static_cast<long>(ks.size());
    }
  } else {
    acc = integrate([&](const double* k, const double* w, std::size_t n,
                        double* out) { fn(in, k, w, n, out); },
                    0.0, std::numbers::pi, kMomentCount, ctx.quad, stats);
  }
  TransformSet t;
  t.alpha0 = scale * acc[0];
  t.alpha1 = scale * acc[1];
  t.alpha2 = scale * acc[2];
  t.F1 = scale * cplx(acc[3], acc[4]);
  t.F2 = scale * cplx(acc[5], acc[6]);
  return t;
}

cplx transform(Channel channel, int p, const TimeSpec& spec, const XYContext& ctx) {
  const TransformSet t = transforms(ctx, spec);
  return channel == Channel::D ? t.alpha(p) : t.F(p);
}

}  // namespace floqreset
