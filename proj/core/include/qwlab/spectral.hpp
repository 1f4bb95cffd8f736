#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "qwlab/field.hpp"

namespace qwlab {

// 2x2 complex matrix, row-major: m[0]=a11 m[1]=a12 m[2]=a21 m[3]=a22.
using mat2 = std::array<cd, 4>;

inline mat2 mat2_identity() { return {cd(1), cd(0), cd(0), cd(1)}; }
mat2 mat2_mul(const mat2& a, const mat2& b);
spinor mat2_apply(const mat2& m, const spinor& s);
double mat2_max_abs(const mat2& m);

// Frequencies xi_k = 2*pi*k/(N*delta), k = -N/2 .. N/2-1, stored in DFT order to
// match SpinorField. All xi in [-pi/delta, pi/delta).
struct FrequencyGrid {
    WalkParams params;
    std::size_t n = 0;

    FrequencyGrid() = default;
    FrequencyGrid(WalkParams p, std::size_t n_);
    double xi(std::size_t i) const {
        long long nn = (long long)n;
        long long k = (long long)i < nn / 2 ? (long long)i : (long long)i - nn;
        return 2.0 * pi() * double(k) / (double(nn) * params.delta);
    }
    double delta_xi() const { return 2.0 * pi() / (double(n) * params.delta); }
    static double pi();
};

struct FrequencyField {
    FrequencyGrid grid;
    std::vector<spinor> v;
};

// F u(xi) = (delta/sqrt(2pi)) sum_x e^{-i x xi} u(x); inverse carries
// sqrt(2pi)/(N delta). Composition is the identity on the ring exactly.
FrequencyField forward_transform(const SpinorField& u);
SpinorField inverse_transform(const FrequencyField& v);

// p(xi) = arccos(cos(delta m) cos(delta xi)) / delta, in [0, pi/delta], even.
double dispersion(double xi, const WalkParams& p);

struct DispersionDerivs {
    double p1, p2, p3;
};
// Closed forms. With c = cos(dm), s = sin(dm), th = d*xi, D = 1 - c^2 cos^2 th:
//   p'   =  c sin th / sqrt(D)
//   p''  =  d c s^2 cos th / D^{3/2}
//   p''' = -d^2 c s^2 (1 + 2 c^2 cos^2 th) sin th / D^{5/2}
DispersionDerivs dispersion_derivatives(double xi, const WalkParams& p);

// Uhat(xi) = diag(e^{-i d xi}, e^{i d xi}) * coin. Unitary, det 1,
// tr = 2 cos(dm) cos(d xi) = 2 cos(d p(xi)).
mat2 symbol_matrix(double xi, const WalkParams& p);
mat2 coin_matrix(const WalkParams& p);

// Rank-one spectral projectors of the symbol: Uhat = e^{i d p} Qp + e^{-i d p} Qm.
// Qs = (Uhat - e^{-i s d p} I) / (e^{i s d p} - e^{-i s d p}).
struct SymbolDecomposition {
    FrequencyGrid grid;
    std::vector<double> p;
    std::vector<mat2> qplus;
    std::vector<mat2> qminus;
};
SymbolDecomposition spectral_decompose(const WalkParams& p, std::size_t n);

// Pointwise projectors at a single frequency (used by the kernel quadrature,
// whose refined nodes are off the grid). Throws DegenerateSymbolError when
// |sin(d p)| < 1e-10.
void symbol_projectors(double xi, const WalkParams& p, mat2& qplus, mat2& qminus);

// Multiply each Fourier mode by Uhat^{t/delta} = e^{i p t} Q+ + e^{-i p t} Q-.
// Negative t allowed (unitary inverse). Agrees with stepping on t >= 0.
SpinorField spectral_evolve(const SpinorField& u, double t);

struct Degeneracies {
    std::vector<double> p2_zeros; // {+-pi/(2 delta)}
    std::vector<double> p3_zeros; // {0, +-pi/delta}
};
// Bisection on the closed forms over [-pi/delta, pi/delta], refined to 1e-8.
Degeneracies locate_degeneracies(const WalkParams& p);

// CSV columns: k,xi,p,pprime,pdprime,ptprime, then re/im of Q+ and Q- entries
// row-major; degeneracy list appended as comment lines.
void write_symbol_table(std::ostream& os, const WalkParams& p, std::size_t n);

}
