#include <experimental/simd>

#include "xy_node.hpp"

namespace floqreset {

namespace stdx = std::experimental;

namespace {

using V = stdx::fixed_size_simd<double, 4>;
using M = V::mask_type;

V load(const double* p) { return V(p, stdx::element_aligned); }

}  // namespace

void xy_moments_avx2(const XYKernelInput& in, const double* k, const double* w, std::size_t n,
                     double* acc) {
  constexpr std::size_t W = V::size();
  const double half = in.period / 2.0;
  const double l0 = in.lambda0;
  const TimeSpec& spec = in.spec;
  const bool steady = spec.kind == TimeSpec::Kind::ResetSteady && spec.r > 0.0;
  const bool at = spec.kind == TimeSpec::Kind::ResetAt;
  const double rT = spec.r * in.period;
  const double p = -std::expm1(-rT);
  const double decay = std::exp(-rT);
  const double keep = at ? std::exp(-rT * static_cast<double>(spec.m)) : 0.0;
  const double two_m = 2.0 * static_cast<double>(spec.m);

  V a0 = 0, a1 = 0, a2 = 0, a3 = 0, a4 = 0, a5 = 0, a6 = 0;
  double tail[kMomentCount] = {};
  std::size_t i = 0;
  for (; i + W <= n; i += W) {
    const V kv = load(k + i);
    const V wv = load(w + i);
    const V c1 = stdx::cos(kv), s1 = stdx::sin(kv);
    const V b = in.J * c1;
    const V D = (in.kappa * in.J) * s1;
    const V zp = l0 - b;
    const V zm = -l0 - b;
    const V Ep = stdx::sqrt(zp * zp + D * D);
    const V Em = stdx::sqrt(zm * zm + D * D);
    const V cp = stdx::cos(Ep * half), cm = stdx::cos(Em * half);
    V sp = stdx::sin(Ep * half) / Ep;
    V sm = stdx::sin(Em * half) / Em;
    // small-E lanes need the t limit of sin(E t)/E
    const M small = (Ep * half < 1e-8) || (Em * half < 1e-8);

    const V c = cm * cp - sm * sp * (D * D + zp * zm);
    const V Sx = D * (cm * sp + sm * cp);
    const V Sy = (-2.0 * l0) * D * sm * sp;
    const V Sz = zp * sp * cm + zm * sm * cp;
    const V s = stdx::sqrt(Sx * Sx + Sy * Sy + Sz * Sz);
    const M degenerate = s < kDegeneracyTol;
    const V inv = 1.0 / s;
    const V nx = Sx * inv, ny = Sy * inv, nz = Sz * inv;
    const V phase = stdx::atan2(s, c);

    V fo = 0, fe = 0;
    M fallback = small;
    switch (spec.kind) {
      case TimeSpec::Kind::GGE:
        break;
      case TimeSpec::Kind::Cycle: {
        const V a = two_m * phase;
        fo = stdx::sin(a);
        fe = stdx::cos(a);
        break;
      }
      case TimeSpec::Kind::ResetSteady:
      case TimeSpec::Kind::ResetAt: {
        if (!steady && !at) break;
        const V sth = stdx::sin(phase);
        const V zr = p + (2.0 * decay) * sth * sth;
        const V zi = -decay * stdx::sin(2.0 * phase);
        const V z2 = zr * zr + zi * zi;
        if (steady) {
          // p / Z
          fo = -p * zi / z2;
          fe = p * zr / z2;
        } else {
          fallback = fallback || (z2 < 1e-16);
          const V a = two_m * phase;
          const V ca = stdx::cos(a), sa = stdx::sin(a);
          // S = (1 - keep e^{ia}) / Z
          const V nr = 1.0 - keep * ca;
          const V ni = -keep * sa;
          const V Sr = (nr * zr + ni * zi) / z2;
          const V Si = (ni * zr - nr * zi) / z2;
          fo = p * Si + keep * sa;
          fe = p * Sr + keep * ca;
        }
        break;
      }
    }

    const V g = 1.0 - fe;
    V cd = 0.5 * (nx * nx + ny * ny) * g;
    V re = 0.5 * (nz * nx * g + ny * fo);
    V im = 0.5 * (-nz * ny * g + nx * fo);
    const M drop = degenerate || fallback;
    stdx::where(drop, cd) = 0.0;
    stdx::where(drop, re) = 0.0;
    stdx::where(drop, im) = 0.0;

    const V c2 = c1 * c1 - s1 * s1, s2 = 2.0 * s1 * c1;
    const V wcd = wv * cd, wre = wv * re, wim = wv * im;
    a0 += wcd;
    a1 += c1 * wcd;
    a2 += c2 * wcd;
    a3 += s1 * wre;
    a4 += s1 * wim;
    a5 += s2 * wre;
    a6 += s2 * wim;

    if (stdx::any_of(fallback)) {
      for (std::size_t j = 0; j < W; ++j)
        if (fallback[j]) detail::xy_node_moments(in, k[i + j], w[i + j], tail);
    }
  }
  for (; i < n; ++i) detail::xy_node_moments(in, k[i], w[i], tail);

  const V* sums[kMomentCount] = {&a0, &a1, &a2, &a3, &a4, &a5, &a6};
  for (std::size_t d = 0; d < kMomentCount; ++d) acc[d] += stdx::reduce(*sums[d]) + tail[d];
}

}  // namespace floqreset
