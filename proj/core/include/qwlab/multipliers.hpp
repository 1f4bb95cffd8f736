#pragma once

#include <functional>
#include <vector>

#include "qwlab/spectral.hpp"

namespace qwlab {

// Smooth bump: phi = 1 on |x|<=1, 0 on |x|>=2, h(2-|x|) between, with
// h(s) = g(s)/(g(s)+g(1-s)), g(s) = e^{-1/s} (s>0). Even, nonincreasing in |x|,
// and chi_[-1,1] <= phi <= chi_[-2,2]. phi(1.5) = 1/2 exactly by symmetry of h.
double bump_phi(double x);
double bump_psi(double x);       // phi(x) - phi(2x): supported on 1/2 <= |x| <= 2
double bump_psi_tilde(double x); // phi(x/2) - phi(4x): = 1 on 1/2 <= |x| <= 2, 0 near 0

// psi(xi/lambda); identically 0 on the grid when lambda >= 2pi/delta (the support
// would need |xi| > pi/delta, past the grid).
double psi_lambda(double xi, double lambda, const WalkParams& p);

// Scalar symbol table sampled on the grid, cached per (N, delta, kind, lambda/a/b).
// Population is idempotent and race-free; hits share one immutable vector.
using MultiplierTable = std::vector<double>;
const MultiplierTable& psi_lambda_table(const FrequencyGrid& g, double lambda);
const MultiplierTable& psi_tilde_lambda_table(const FrequencyGrid& g, double lambda);

// p(D) u = F^{-1}(table * F u), exact on the ring. Tables must match the ring.
SpinorField apply_multiplier(const SpinorField& u, const MultiplierTable& table);
SpinorField apply_multiplier(const SpinorField& u,
                             const std::function<cd(double)>& symbol);

// P_lambda and its companion. lambda >= 2pi/delta returns the zero field.
SpinorField littlewood_paley(const SpinorField& u, double lambda);
SpinorField littlewood_paley_tilde(const SpinorField& u, double lambda);

// |D|^a <D>^b with symbol |xi|^a (1+xi^2)^{b/2}; at xi=0 the symbol is 0 for a>0
// and 1 for a=0. a<0 only on mean-zero input (the zero mode is annihilated, not
// inverted); otherwise DomainError.
SpinorField fractional_weight(const SpinorField& u, double a, double b);

// Dyadic ladder 2^j covering every nonzero grid frequency: the partial psi sums
// telescope exactly in binary arithmetic, so sum_j P_{2^j} u = u - zero mode.
std::vector<double> dyadic_lambdas(const FrequencyGrid& g);

}
