#include <doctest.h>

#include <random>

#include "floqreset/pxp.hpp"
#include "floqreset/reset.hpp"
#include "support/random_states.hpp"

using namespace floqreset;

namespace {

struct Draw {
  MomentumMode mode;
  DriveProtocol drive;
  FloquetMode fm;
  CorrelatorDecomposition dec;
  double r;
};

Draw random_draw(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Draw d;
  d.mode = MomentumMode(std::numbers::pi * (0.02 + 0.96 * u(rng)), 1.0, -1.0 + 2.0 * u(rng));
  d.drive = DriveProtocol::from_ratio(10.0, 0.2 + 1.3 * u(rng));
  d.fm = floquet_mode(d.mode, d.drive);
  d.dec = correlator_decomposition(d.fm, ModeState::vacuum());
  d.r = 2.0 * u(rng);
  return d;
}

double diff(const Correlators& a, const Correlators& b) { return std::max(std::abs(a.d - b.d), std::abs(a.o - b.o)); }

}  // namespace

TEST_SUITE("reset") {

TEST_CASE("reset weights") {
  const ResetWeights w0 = reset_weights(0.0, 0.7, 5);
  for (long q = 0; q < 5; ++q) CHECK(w0(q) == 0.0);
  CHECK(w0(5) == 1.0);

  const double T = 0.9;
  const ResetWeights w = reset_weights(std::log(2.0) / T, T, 2);
  CHECK(w(0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(w(1) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(w(2) == doctest::Approx(0.25).epsilon(1e-15));

  const ResetWeights big = reset_weights(0.3, 0.7, 400);
  double total = 0.0;
  for (double x : big.weight) total += x;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(big(400) == doctest::Approx(std::exp(-0.3 * 0.7 * 400)).epsilon(1e-10));
}

TEST_CASE("closed-form renewal average equals the explicit sum") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 200; ++i) {
    const Draw d = random_draw(rng);
    for (long m : {0L, 1L, 50L, 333L})
      CHECK(diff(reset_average_correlators(d.dec, d.fm, d.r, d.drive.period(), m),
                 reset_average_explicit(d.dec, d.fm, d.r, d.drive.period(), m)) < 1e-12);
  }
}

TEST_CASE("no-reset and Zeno limits") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 50; ++i) {
    const Draw d = random_draw(rng);
    const double T = d.drive.period();
    for (long m : {0L, 9L, 120L}) {
      const Correlators a = reset_average_correlators(d.dec, d.fm, 0.0, T, m);
      const Correlators b = correlators_at_cycle(d.dec, d.fm, m);
      CHECK(a.d == b.d);
      CHECK(a.o == b.o);
      const Correlators z = reset_average_correlators(d.dec, d.fm, 21.0 / T, T, m);
      CHECK(std::abs(z.d) < 1e-8);
      CHECK(std::abs(z.o) < 1e-8);
    }
    const Correlators gge = correlators_at(d.dec, d.fm, TimeSpec::gge(), T);
    const Correlators s0 = reset_steady_state_correlators(d.dec, d.fm, 0.0, T);
    CHECK(diff(s0, gge) == 0.0);
    const Correlators sz = reset_steady_state_correlators(d.dec, d.fm, 1e3 / T, T);
    CHECK(std::abs(sz.d) < 1e-8);
    CHECK(std::abs(sz.o) < 1e-8);
  }
}

TEST_CASE("finite-m average converges to the steady state") {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 50; ++i) {
    Draw d = random_draw(rng);
    d.r = 0.2 + d.r;
    const double T = d.drive.period();
    const long m = static_cast<long>(std::ceil(40.0 / (d.r * T)));
    CHECK(diff(reset_average_correlators(d.dec, d.fm, d.r, T, m),
               reset_steady_state_correlators(d.dec, d.fm, d.r, T)) < 1e-12);
  }
}

TEST_CASE("fast memory loss when r T > 10") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 30; ++i) {
    const Draw d = random_draw(rng);
    const double T = d.drive.period();
    const double r = 11.0 / T;
    const Correlators ref = reset_average_correlators(d.dec, d.fm, r, T, 5);
    for (long m = 6; m < 40; ++m) CHECK(diff(reset_average_correlators(d.dec, d.fm, r, T, m), ref) < 1e-4);
  }
}

TEST_CASE("trajectory Monte-Carlo agrees within three standard errors") {
  std::mt19937_64 rng(59);
  for (int i = 0; i < 5; ++i) {
    const Draw d = random_draw(rng);
    const double T = d.drive.period();
    const long m = 50;
    const auto f = [&](long age) {
      const Correlators c = correlators_at_cycle(d.dec, d.fm, age);
      return std::vector<double>{c.d, c.o.real(), c.o.imag()};
    };
    const auto est = trajectory_average(f, d.r, T, m, 100000, 1000 + i);
    const Correlators exact = reset_average_correlators(d.dec, d.fm, d.r, T, m);
    const double want[3] = {exact.d, exact.o.real(), exact.o.imag()};
    for (int c = 0; c < 3; ++c) CHECK(std::abs(est[c].mean - want[c]) <= 3.0 * est[c].stderr_ + 1e-15);
  }
}

TEST_CASE("random streams are reproducible and distinct") {
  const SplitStream s(7);
  auto a = s.stream(3), b = s.stream(3), c = s.stream(4);
  CHECK(a() == b());
  CHECK(s.stream(3)() != c());
  std::mt19937_64 g(1);
  CHECK(sample_reset_age(g, 0.0, 17) == 17);
  CHECK(sample_reset_age(g, 1.0, 17) == 0);
}

TEST_CASE("reset-averaged density matrices") {
  std::mt19937_64 rng(61);
  std::vector<TwoSpinDensityMatrix> hist;
  for (int q = 0; q <= 30; ++q) hist.push_back(testing::random_density_matrix(rng, 2));
  CHECK((reset_average_rho(hist, 0.0, 0.5) - hist.back()).norm() == 0.0);
  const TwoSpinDensityMatrix avg = reset_average_rho(hist, 0.8, 0.5);
  CHECK_NOTHROW(check_density_matrix(avg));
  const std::vector<TwoSpinDensityMatrix> flat(12, hist[4]);
  CHECK((reset_average_rho(flat, 1.3, 0.5) - hist[4]).norm() < 1e-14);
  CHECK_THROWS_AS(reset_average_rho({}, 0.1, 0.5), Error);
}

TEST_CASE("PXP L = 8: limits and Monte-Carlo for matrix averaging") {
  const PXPSystem sys(8, 2, Dressing::Plain);
  const DriveProtocol d = DriveProtocol::from_ratio(10.0, 0.5075);
  const FloquetOperator F = sys.floquet(1.0, d.lambda0(), d.period());
  const long m = 50;
  std::vector<TwoSpinDensityMatrix> hist;
  for (long q = 0; q <= m; ++q) hist.push_back(sys.pair_rdm(stroboscopic_state(F, sys.initial_state(), q)));

  CHECK((reset_average_rho(hist, 0.0, d.period()) - hist.back()).cwiseAbs().maxCoeff() == 0.0);
  const TwoSpinDensityMatrix zeno = reset_average_rho(hist, 21.0 / d.period(), d.period());
  CHECK((zeno - hist.front()).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(std::abs(hist.front()(3, 3) - 1.0) < 1e-14);

  const double r = 0.05;
  const TwoSpinDensityMatrix exact = reset_average_rho(hist, r, d.period());
  const auto f = [&](long age) {
    const TwoSpinDensityMatrix& x = hist[static_cast<std::size_t>(age)];
    return std::vector<double>{x(0, 0).real(), x(1, 1).real(), x(3, 3).real(), x(1, 2).real(), x(0, 3).real()};
  };
  const auto est = trajectory_average(f, r, d.period(), m, 100000, 77);
  const double want[5] = {exact(0, 0).real(), exact(1, 1).real(), exact(3, 3).real(), exact(1, 2).real(),
                          exact(0, 3).real()};
  for (int c = 0; c < 5; ++c) CHECK(std::abs(est[c].mean - want[c]) <= 3.0 * est[c].stderr_ + 1e-15);
}

}  // TEST_SUITE
