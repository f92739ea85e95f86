#include <doctest.h>

#include "floqreset/entanglement.hpp"
#include "floqreset/xy_correlators.hpp"
#include "support/random_states.hpp"
#include "support/spin_chain.hpp"

using namespace floqreset;

TEST_SUITE("entanglement") {

TEST_CASE("single-spin entropy") {
  CHECK(single_spin_entropy(0.0) == 0.0);
  CHECK(single_spin_entropy(1.0) == 0.0);
  CHECK(single_spin_entropy(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(std::abs(single_spin_entropy(0.1) - 0.325083) < 1e-6);
  CHECK_THROWS_AS(single_spin_entropy(1.2), Error);
  Eigen::Matrix2cd rho;
  rho << 0.9, 0.0, 0.0, 0.1;
  CHECK(von_neumann_entropy(rho) == doctest::Approx(single_spin_entropy(0.1)).epsilon(1e-14));
}

TEST_CASE("X-state from transforms: trivial and GGE cases") {
  const XState x0 = xy_two_spin_rdm(2, TransformSet{});
  CHECK(x0.a_minus == 1.0);
  CHECK(x0.a_plus == 0.0);
  CHECK(x0.a_0 == 0.0);
  CHECK(std::abs(x0.b_1) == 0.0);
  CHECK(std::abs(x0.b_2) == 0.0);

  XYContext ctx;
  ctx.params.kappa = 0.7;
  ctx.drive = DriveProtocol::from_ratio(10.0, 0.8);
  const XState g = xy_two_spin_rdm(1, transforms(ctx, TimeSpec::gge()));
  CHECK(std::abs(g.b_1) < 1e-9);
  CHECK(std::abs(g.b_2) < 1e-9);
  CHECK(concurrence_xstate(g) == 0.0);
  CHECK_THROWS_AS(xy_two_spin_rdm(3, TransformSet{}), Error);
}

TEST_CASE("two-spin rdm matches a brute-force L = 12 chain") {
  const int L = 12;
  const DriveProtocol d = DriveProtocol::from_ratio(10.0, 0.6);
  const testing::SpinChain chain(L, 1.0, 0.7);
  const auto up = chain.propagator(10.0, d.period() / 2), down = chain.propagator(-10.0, d.period() / 2);
  Eigen::VectorXcd psi = chain.all_down();
  for (int m = 0; m < 50; ++m) psi = down(up(psi));

  XYContext ctx;
  ctx.params.kappa = 0.7;
  ctx.params.L = L;
  ctx.drive = d;
  const TransformSet t = transforms(ctx, TimeSpec::cycle(50));
  for (int l : {1, 2}) {
    const TwoSpinDensityMatrix exact = chain.rdm(psi, 0, l);
    const TwoSpinDensityMatrix rho = xy_two_spin_rdm(l, t).matrix();
    CHECK((exact - rho).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
    CHECK(testing::min_eigenvalue(rho) > -1e-12);
    CHECK_NOTHROW(check_density_matrix(rho));
    CHECK(std::abs(concurrence_xstate(xy_two_spin_rdm(l, t)) - concurrence_general(exact)) < 1e-8);
  }
}

TEST_CASE("concurrence of reference states") {
  TwoSpinDensityMatrix dd = TwoSpinDensityMatrix::Zero();
  dd(3, 3) = 1.0;
  CHECK(concurrence_general(dd) == doctest::Approx(0.0));

  Eigen::Vector4cd phi(1.0, 0.0, 0.0, 1.0);
  phi /= std::sqrt(2.0);
  const TwoSpinDensityMatrix bell = phi * phi.adjoint();
  CHECK(concurrence_general(bell) == doctest::Approx(1.0).epsilon(1e-12));

  const TwoSpinDensityMatrix werner = 0.6 * bell + 0.4 * TwoSpinDensityMatrix::Identity() / 4.0;
  CHECK(concurrence_general(werner) == doctest::Approx(0.4).epsilon(1e-12));
  // independent X-state evaluation: a0 = 0.1, |b1| = 0.3
  CHECK(2.0 * std::max(0.0, 0.3 - 0.1) == doctest::Approx(0.4));

  CHECK(concurrence_xstate(XState{}) == 0.0);
  XState b;
  b.a_plus = b.a_minus = 0.5;
  b.b_1 = 0.5;
  CHECK(concurrence_xstate(b) == doctest::Approx(1.0));
}

TEST_CASE("X-state fast path equals Wootters on random X-states") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 10000; ++i) {
    const XState x = testing::random_xstate(rng);
    REQUIRE(std::abs(concurrence_xstate(x) - concurrence_general(x.matrix())) < 1e-12);
  }
}

TEST_CASE("concurrence is invariant under local phase rotations") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  for (int i = 0; i < 500; ++i) {
    const TwoSpinDensityMatrix rho = testing::random_density_matrix(rng, 1 + i % 3);
    Eigen::Matrix2cd a = Eigen::Matrix2cd::Identity(), b = Eigen::Matrix2cd::Identity();
    a(0, 0) = std::polar(1.0, u(rng));
    b(0, 0) = std::polar(1.0, u(rng));
    Eigen::Matrix4cd V;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) V.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
    CHECK(std::abs(concurrence_general(rho) - concurrence_general(V * rho * V.adjoint())) < 1e-12);
  }
}

TEST_CASE("positive partial transpose iff zero concurrence") {
  std::mt19937_64 rng(29);
  int entangled = 0;
  for (int i = 0; i < 1000; ++i) {
    const TwoSpinDensityMatrix rho = testing::random_density_matrix(rng, 1 + i % 4);
    const double C = concurrence_general(rho);
    const double lam = testing::min_eigenvalue(partial_transpose(rho));
    if (C > 1e-9) {
      ++entangled;
      CHECK(lam < -1e-9);
    } else {
      CHECK(lam > -1e-9);
    }
  }
  CHECK(entangled > 100);
}

TEST_CASE("density matrix checks") {
  TwoSpinDensityMatrix bad = TwoSpinDensityMatrix::Zero();
  bad(0, 0) = 1.2;
  bad(3, 3) = -0.2;
  CHECK_THROWS_AS(check_density_matrix(bad), Error);
  TwoSpinDensityMatrix half = TwoSpinDensityMatrix::Identity() / 8.0;
  CHECK_THROWS_AS(check_density_matrix(half), Error);
  CHECK_NOTHROW(check_density_matrix(TwoSpinDensityMatrix::Identity() / 4.0));
}

}  // TEST_SUITE
