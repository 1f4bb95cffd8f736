#pragma once

#include <functional>

#include "qwlab/spectral.hpp"

namespace qwlab {
namespace oracle {

// Everything here is deliberately slow and independent of the fast paths:
// direct sums, dense matrices, finite differences. Tests and the self-test
// trust these, not the library, as ground truth.

// O(N^2) transform by the definition (no FFT).
FrequencyField forward_transform_direct(const SpinorField& u);
SpinorField inverse_transform_direct(const FrequencyField& v);

// Dense 2N x 2N one-step matrix applied t/delta times to the flattened field.
SpinorField dense_evolve(const SpinorField& u, double t);

// O(N^2) ring convolution (I*u)(x) = delta sum_y I(x-y) u(y).
SpinorField convolve_direct(const SpinorField& u, const std::vector<mat2>& kern);

// Central differences of the dispersion chain, one closed form down, in long
// double: FD(p) ~ p', FD(closed p') ~ p'', FD(closed p'') ~ p'''. Plain double
// differences of p alone cannot certify p''' at 1e-6 relative error near the
// exclusion-zone boundaries (roundoff eps/h ~ 2e-11 against |p''| ~ 1e-8).
DispersionDerivs fd_derivatives(double xi, const WalkParams& p, double h = 1e-5);

// Bisection to |b-a| <= tol; requires a sign change.
double bisect(const std::function<double(double)>& f, double a, double b,
              double tol = 1e-8);

}
}
