#include "floqreset/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "floqreset/errors.hpp"

namespace floqreset {

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidValue, "Gauss-Legendre order must be >= 1");
  GaussLegendreRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.x[i] = -x;
    rule.x[n - 1 - i] = x;
    rule.w[i] = w;
    rule.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.x[n / 2] = 0.0;
  return rule;
}

namespace {

struct PanelEval {
  const BatchIntegrand& f;
  const GaussLegendreRule& rule;
  std::size_t dim;
  std::vector<double> xs, ws;
  long evaluations = 0;

  std::vector<double> operator()(double a, double b) {
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    xs.resize(rule.x.size());
    ws.resize(rule.x.size());
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      xs[i] = c + h * rule.x[i];
      ws[i] = h * rule.w[i];
    }
    std::vector<double> acc(dim, 0.0);
    f(xs.data(), ws.data(), xs.size(), acc.data());
    evaluations += static_cast<long>(xs.size());
    return acc;
  }
};

struct Pending {
  double a, b;
  std::vector<double> value;
};

}  // namespace

std::vector<double> integrate(const BatchIntegrand& f, double a, double b, std::size_t dim,
                              const QuadratureOptions& opts, QuadratureStats* stats) {
  static const GaussLegendreRule rule = gauss_legendre(kPanelOrder);
  const int n_panels = std::max(1, (opts.nodes + kPanelOrder - 1) / kPanelOrder);
  PanelEval eval{f, rule, dim, {}, {}};
  std::vector<double> total(dim, 0.0);
  const double length = b - a;
  int panels = 0;

  for (int p = 0; p < n_panels; ++p) {
    const double pa = a + length * p / n_panels;
    const double pb = p + 1 == n_panels ? b : a + length * (p + 1) / n_panels;
    std::vector<Pending> stack;
    stack.push_back({pa, pb, eval(pa, pb)});
    while (!stack.empty()) {
      Pending cur = std::move(stack.back());
      stack.pop_back();
      if (!opts.adaptive) {
        ++panels;
        for (std::size_t d = 0; d < dim; ++d) total[d] += cur.value[d];
        continue;
      }
      const double mid = 0.5 * (cur.a + cur.b);
      auto left = eval(cur.a, mid);
      auto right = eval(mid, cur.b);
      double diff = 0.0;
      for (std::size_t d = 0; d < dim; ++d)
        diff = std::max(diff, std::abs(left[d] + right[d] - cur.value[d]));
      const double local_tol = opts.tol * (cur.b - cur.a) / length;
      if (diff <= local_tol || mid <= cur.a || mid >= cur.b) {
        panels += 2;
        for (std::size_t d = 0; d < dim; ++d) total[d] += left[d] + right[d];
      } else {
        if (panels + static_cast<int>(stack.size()) + 2 > opts.max_panels)
          throw Error(ErrorCode::QuadratureNotConverged,
                      "adaptive refinement exceeded " + std::to_string(opts.max_panels) + " panels");
        // right pushed first so the left half is processed first
        stack.push_back({mid, cur.b, std::move(right)});
        stack.push_back({cur.a, mid, std::move(left)});
      }
    }
  }
  if (stats) {
    stats->panels = panels;
    stats->evaluations = eval.evaluations;
  }
  return total;
}

}  // namespace floqreset
