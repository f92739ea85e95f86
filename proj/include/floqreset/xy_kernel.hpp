#pragma once

// Per-node XY integrand for the all-down initial state. Each call adds the
// weighted moments
//   acc[0] += w C_d            acc[1] += w cos k C_d     acc[2] += w cos 2k C_d
//   acc[3] += w sin k Re C_o*  acc[4] += w sin k Im C_o*
//   acc[5] += w sin 2k Re C_o* acc[6] += w sin 2k Im C_o*
// Two variants exist: a scalar reference and an AVX2 one; both give the same
// sums to rounding.

#include <cstddef>

#include "floqreset/xy_correlators.hpp"

namespace floqreset {

inline constexpr std::size_t kMomentCount = 7;

struct XYKernelInput {
  double J = 1.0;
  double kappa = 0.0;
  double lambda0 = 1.0;
  double period = 1.0;
  TimeSpec spec;
};

using XYKernelFn = void (*)(const XYKernelInput& in, const double* k, const double* w, std::size_t n,
                            double* acc);

void xy_moments_scalar(const XYKernelInput& in, const double* k, const double* w, std::size_t n,
                       double* acc);
void xy_moments_avx2(const XYKernelInput& in, const double* k, const double* w, std::size_t n,
                     double* acc);

/// True when the AVX2 variant was compiled in and the CPU supports AVX2 and FMA.
bool avx2_available();

/// Resolves Auto to the best available variant.
KernelVariant resolve_kernel(KernelVariant requested);

XYKernelFn kernel_function(KernelVariant variant);

const char* to_string(KernelVariant v);

}  // namespace floqreset
