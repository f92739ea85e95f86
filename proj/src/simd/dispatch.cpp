#include "floqreset/xy_kernel.hpp"

namespace floqreset {

#ifndef FLOQRESET_HAVE_AVX2
void xy_moments_avx2(const XYKernelInput& in, const double* k, const double* w, std::size_t n,
                     double* acc) {
  xy_moments_scalar(in, k, w, n, acc);
}
#endif

bool avx2_available() {
#if defined(FLOQRESET_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

KernelVariant resolve_kernel(KernelVariant requested) {
  if (requested == KernelVariant::Auto) return avx2_available() ? KernelVariant::Avx2 : KernelVariant::Scalar;
  if (requested == KernelVariant::Avx2 && !avx2_available()) return KernelVariant::Scalar;
  return requested;
}

XYKernelFn kernel_function(KernelVariant variant) {
  return resolve_kernel(variant) == KernelVariant::Avx2 ? &xy_moments_avx2 : &xy_moments_scalar;
}

const char* to_string(KernelVariant v) {
  switch (v) {
    case KernelVariant::Auto: return "auto";
    case KernelVariant::Scalar: return "scalar";
    case KernelVariant::Avx2: return "avx2";
  }
  return "unknown";
}

}  // namespace floqreset
