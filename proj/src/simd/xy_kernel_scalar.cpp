#include "xy_node.hpp"

namespace floqreset {

namespace detail {

void xy_node_moments(const XYKernelInput& in, double k, double w, double* acc) {
  const FloquetMode fm = floquet_mode(MomentumMode(k, in.J, in.kappa), in.lambda0, in.period);
  if (fm.degenerate) return;
  const double nx = fm.n.x(), ny = fm.n.y(), nz = fm.n.z();
  const TimeFactors f = time_factors(in.spec, fm.phase, in.period);
  const double g = 1.0 - f.even;
  const double cd = 0.5 * (nx * nx + ny * ny) * g;
  const double re = 0.5 * (nz * nx * g + ny * f.odd);
  const double im = 0.5 * (-nz * ny * g + nx * f.odd);
  const double c1 = std::cos(k), s1 = std::sin(k);
  const double c2 = c1 * c1 - s1 * s1, s2 = 2.0 * s1 * c1;
  acc[0] += w * cd;
  acc[1] += w * c1 * cd;
  acc[2] += w * c2 * cd;
  acc[3] += w * s1 * re;
  acc[4] += w * s1 * im;
  acc[5] += w * s2 * re;
  acc[6] += w * s2 * im;
}

}  // namespace detail

void xy_moments_scalar(const XYKernelInput& in, const double* k, const double* w, std::size_t n,
                       double* acc) {
  for (std::size_t i = 0; i < n; ++i) detail::xy_node_moments(in, k[i], w[i], acc);
}

}  // namespace floqreset
