#pragma once

#include "floqreset/xy_kernel.hpp"

namespace floqreset::detail {

/// Adds the weighted moments of a single node; the scalar reference path.
/// Defined out of line so that AVX2-compiled translation units never emit it.
void xy_node_moments(const XYKernelInput& in, double k, double w, double* acc);

}  // namespace floqreset::detail
