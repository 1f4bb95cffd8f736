#pragma once

#include "qwlab/spectral.hpp"

namespace qwlab {

// I_s(t,x) = (1/2pi) int_{-pi/d}^{pi/d} e^{i(s p(xi) t + x xi)} Q_s(xi) psi_lambda(xi) dxi
// by the periodic trapezoid rule on a refinement of the N-point grid (M = refine*N
// nodes, equal weights): exact for the M-site ring, so the only error against the
// N-ring operator is the kernel's own tail folding, which the smooth cutoff makes
// superpolynomially small inside the light cone.
mat2 kernel_quadrature(const WalkParams& p, double lambda, int s, double t,
                       double x, std::size_t n, int refine = 8);

// sum_s (I_s * u)(x) with (I*u)(x) = delta * sum_y I(x-y) u(y) on the ring.
// Builds both kernel tables once (O(refine * N^2) closed-form evaluations).
SpinorField kernel_convolve(const SpinorField& u, double lambda, double t,
                            int refine = 8);

}
