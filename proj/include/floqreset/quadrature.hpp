#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace floqreset {

/// Gauss-Legendre nodes and weights on [-1, 1], built by Newton iteration.
struct GaussLegendreRule {
  std::vector<double> x;
  std::vector<double> w;
};

GaussLegendreRule gauss_legendre(int n);

/// Points per panel of the composite rule.
inline constexpr int kPanelOrder = 16;

struct QuadratureOptions {
  /// Total nodes of the initial composite rule (rounded up to a multiple of 16).
  int nodes = 512;
  /// Absolute tolerance on the whole interval; each panel gets tol * width / length.
  double tol = 1e-9;
  bool adaptive = true;
  int max_panels = 1 << 15;
};

struct QuadratureStats {
  int panels = 0;
  long evaluations = 0;
};

/// Adds sum_i w_i f(x_i) into acc[0..dim) for a batch of nodes.
using BatchIntegrand =
    std::function<void(const double* x, const double* w, std::size_t n, double* acc)>;

/// Vector-valued integral over [a, b]. Panels whose 16-point estimate
/// disagrees with the estimate from their two halves are bisected until the
/// difference falls below the local tolerance.
/// Throws Error(QuadratureNotConverged) when max_panels is exceeded.
std::vector<double> integrate(const BatchIntegrand& f, double a, double b, std::size_t dim,
                              const QuadratureOptions& opts = {}, QuadratureStats* stats = nullptr);

}  // namespace floqreset
