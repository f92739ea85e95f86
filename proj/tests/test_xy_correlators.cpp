#include <doctest.h>

#include <random>

#include "floqreset/quadrature.hpp"
#include "floqreset/xy_correlators.hpp"

using namespace floqreset;

namespace {

XYContext fig2_context(double ratio = 0.8) {
  XYContext ctx;
  ctx.params.kappa = 0.7;
  ctx.drive = DriveProtocol::from_ratio(10.0, ratio);
  return ctx;
}

double transform_diff(const TransformSet& a, const TransformSet& b) {
  return std::max({std::abs(a.alpha0 - b.alpha0), std::abs(a.alpha1 - b.alpha1), std::abs(a.alpha2 - b.alpha2),
                   std::abs(a.F1 - b.F1), std::abs(a.F2 - b.F2)});
}

}  // namespace

TEST_SUITE("xy_correlators") {

TEST_CASE("kappa = 0: the all-down state is stationary") {
  const auto dec = correlator_decomposition(MomentumMode(0.8, 1.0, 0.0), DriveProtocol::from_ratio(10.0, 0.8),
                                            ModeState::vacuum());
  CHECK(dec.d.gge == 0.0);
  CHECK(dec.d.odd == 0.0);
  CHECK(dec.d.even == 0.0);
  CHECK(std::abs(dec.o.gge) == 0.0);
  CHECK(std::abs(dec.o.odd) == 0.0);
  CHECK(std::abs(dec.o.even) == 0.0);
}

TEST_CASE("decomposition reproduces direct evolution") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const MomentumMode mode(std::numbers::pi * u(rng), 1.0, -1.0 + 2.0 * u(rng));
    const DriveProtocol d = DriveProtocol::from_ratio(10.0, 0.2 + 1.3 * u(rng));
    const FloquetMode fm = floquet_mode(mode, d);
    const auto dec = correlator_decomposition(fm, ModeState::vacuum());
    CHECK(std::abs(dec.d.gge + dec.d.even) < 1e-15);
    const long m = static_cast<long>(500 * u(rng));
    const Correlators a = correlators_at_cycle(dec, fm, m);
    const Correlators b = correlators_of_state(evolve_mode_oracle(mode, d, m, ModeState::vacuum()));
    CHECK(std::abs(a.d - b.d) < 1e-11);
    CHECK(std::abs(a.o - b.o) < 1e-11);
    // pure mode state: |C_o|^2 = C_d (1 - C_d)
    CHECK(std::abs(std::norm(a.o) - a.d * (1.0 - a.d)) < 1e-12);
    CHECK(a.d >= -1e-15);
    CHECK(a.d <= 1.0 + 1e-15);
  }
}

TEST_CASE("m = 0 correlators vanish for the all-down state") {
  const MomentumMode mode(1.3, 1.0, 0.7);
  const DriveProtocol d = DriveProtocol::from_ratio(10.0, 0.8);
  const FloquetMode fm = floquet_mode(mode, d);
  const Correlators c = correlators_at_cycle(correlator_decomposition(fm, ModeState::vacuum()), fm, 0);
  CHECK(std::abs(c.d) < 1e-15);
  CHECK(std::abs(c.o) < 1e-15);
}

TEST_CASE("frozen mode: correlators are constant in m") {
  const DriveProtocol d(10.0, std::sqrt(100.49));
  const MomentumMode mode(std::numbers::pi / 2, 1.0, 0.7);
  const FloquetMode fm = floquet_mode(mode, d);
  REQUIRE(fm.degenerate);
  const ModeState init{cplx(0.8, 0.0), cplx(0.0, 0.6)};
  const auto dec = correlator_decomposition(fm, init);
  const Correlators c0 = correlators_at_cycle(dec, fm, 0);
  for (long m : {1L, 2L, 17L, 999L}) {
    const Correlators c = correlators_at_cycle(dec, fm, m);
    CHECK(std::abs(c.d - c0.d) < 1e-14);
    CHECK(std::abs(c.o - c0.o) < 1e-14);
  }
}

TEST_CASE("long-time average approaches the GGE part") {
  const MomentumMode mode(0.7, 1.0, 0.7);
  const DriveProtocol d = DriveProtocol::from_ratio(10.0, 0.8);
  const FloquetMode fm = floquet_mode(mode, d);
  const auto dec = correlator_decomposition(fm, ModeState::vacuum());
  const long M = 20000;
  double avg_d = 0.0;
  cplx avg_o = 0.0;
  for (long m = 0; m < M; ++m) {
    const Correlators c = correlators_at_cycle(dec, fm, m);
    avg_d += c.d / M;
    avg_o += c.o / static_cast<double>(M);
  }
  const Correlators g = correlators_at(dec, fm, TimeSpec::gge(), d.period());
  CHECK(std::abs(avg_d - g.d) < 1e-3);
  CHECK(std::abs(avg_o - g.o) < 1e-3);
}

TEST_CASE("GGE symmetry under k -> pi - k") {
  const DriveProtocol d = DriveProtocol::from_ratio(10.0, 0.8);
  for (double k : {0.1, 0.4, 0.9, 1.3}) {
    auto gge = [&](double q) {
      const FloquetMode fm = floquet_mode(MomentumMode(q, 1.0, 0.7), d);
      return correlators_at(correlator_decomposition(fm, ModeState::vacuum()), fm, TimeSpec::gge(), d.period());
    };
    const Correlators a = gge(k), b = gge(std::numbers::pi - k);
    CHECK(a.d == doctest::Approx(b.d).epsilon(1e-10));
    CHECK(std::abs(a.o + b.o) < 1e-10);
  }
}

TEST_CASE("transforms vanish at m = 0") {
  const TransformSet t = transforms(fig2_context(), TimeSpec::cycle(0));
  CHECK(transform_diff(t, TransformSet{}) < 1e-15);
}

TEST_CASE("odd transforms vanish at the GGE") {
  for (double ratio : {0.3, 0.55, 0.8, 1.1}) {
    const TransformSet t = transforms(fig2_context(ratio), TimeSpec::gge());
    CHECK(std::abs(t.alpha1) < 1e-9);
    CHECK(std::abs(t.F1) < 1e-9);
    CHECK(t.alpha0 > 0.0);
  }
}

TEST_CASE("alpha0 is an occupation for every time spec") {
  const std::vector<TimeSpec> specs = {TimeSpec::cycle(0),          TimeSpec::cycle(37),
                                       TimeSpec::cycle(1000),       TimeSpec::gge(),
                                       TimeSpec::reset_at(0.3, 40), TimeSpec::reset_steady(0.05),
                                       TimeSpec::reset_steady(50.0)};
  for (const auto& s : specs) {
    const TransformSet t = transforms(fig2_context(0.63), s);
    CHECK(t.alpha0 >= 0.0);
    CHECK(t.alpha0 <= 1.0);
  }
}

TEST_CASE("single transforms agree with the batched set") {
  const XYContext ctx = fig2_context();
  const TimeSpec s = TimeSpec::reset_steady(0.4);
  const TransformSet t = transforms(ctx, s);
  CHECK(std::abs(transform(Channel::D, 0, s, ctx) - t.alpha(0)) < 1e-14);
  CHECK(std::abs(transform(Channel::D, 2, s, ctx) - t.alpha(2)) < 1e-14);
  CHECK(std::abs(transform(Channel::O, 2, s, ctx) - t.F(2)) < 1e-14);
}

TEST_CASE("discrete sums at large L approach the integrals") {
  XYContext ctx = fig2_context();
  for (const TimeSpec& s : {TimeSpec::cycle(25), TimeSpec::reset_steady(0.4), TimeSpec::gge()}) {
    const TransformSet integral = transforms(ctx, s);
    XYContext fin = ctx;
    fin.params.L = 4096;
    CHECK(transform_diff(integral, transforms(fin, s)) < 1e-5);
  }
}

TEST_CASE("doubling the node count changes transforms by < 1e-9") {
  XYContext ctx = fig2_context();
  for (const TimeSpec& s : {TimeSpec::cycle(200), TimeSpec::reset_steady(0.17), TimeSpec::reset_at(0.5, 80)}) {
    const TransformSet a = transforms(ctx, s);
    XYContext dbl = ctx;
    dbl.quad.nodes *= 2;
    CHECK(transform_diff(a, transforms(dbl, s)) < 1e-9);
  }
}

}  // TEST_SUITE

TEST_SUITE("quadrature") {

TEST_CASE("Gauss-Legendre is exact for polynomials of degree 2n-1") {
  const auto rule = gauss_legendre(16);
  double s = 0.0, w = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    s += rule.w[i] * std::pow(rule.x[i], 30);
    w += rule.w[i];
  }
  CHECK(w == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(s == doctest::Approx(2.0 / 31.0).epsilon(1e-13));
}

TEST_CASE("adaptive refinement resolves a narrow peak") {
  const BatchIntegrand f = [](const double* x, const double* w, std::size_t n, double* acc) {
    for (std::size_t i = 0; i < n; ++i) acc[0] += w[i] * 1e-3 / (1e-6 + (x[i] - 0.3) * (x[i] - 0.3));
  };
  QuadratureOptions o;
  o.nodes = 64;
  QuadratureStats stats;
  const auto v = integrate(f, 0.0, 1.0, 1, o, &stats);
  const double exact = std::atan(0.7 / 1e-3) + std::atan(0.3 / 1e-3);
  CHECK(v[0] == doctest::Approx(exact).epsilon(1e-10));
  CHECK(stats.panels > 4);
}

TEST_CASE("panel budget exhaustion raises QuadratureNotConverged") {
  const BatchIntegrand f = [](const double* x, const double* w, std::size_t n, double* acc) {
    for (std::size_t i = 0; i < n; ++i) acc[0] += w[i] * std::sin(1e5 * x[i]);
  };
  QuadratureOptions o;
  o.nodes = 16;
  o.max_panels = 8;
  try {
    integrate(f, 0.0, 1.0, 1, o);
    FAIL("expected a convergence error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::QuadratureNotConverged);
  }
}

}  // TEST_SUITE
