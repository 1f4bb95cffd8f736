#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qwlab/params.hpp"

namespace qwlab {

using cd = std::complex<double>;
using spinor = std::array<cd, 2>;

// C^2-valued field on a ring of N sites standing in for delta*Z. N is even and a
// power of two. Storage is DFT order: index i in [0, N) holds site j = i for
// i < N/2 and j = i - N otherwise, x = j*delta. Rotation by one storage slot is
// translation by one site in either order, so the shift never needs a reorder.
struct SpinorField {
    WalkParams params;
    std::vector<spinor> v;

    SpinorField() = default;
    SpinorField(WalkParams p, std::size_t n);

    std::size_t sites() const { return v.size(); }
    double delta() const { return params.delta; }

    // site j in [-N/2, N/2) <-> storage index
    std::size_t index_of(long long j) const {
        long long n = (long long)sites();
        return (std::size_t)(j >= 0 ? j : j + n);
    }
    long long site_of(std::size_t i) const {
        long long n = (long long)sites();
        return (long long)i < n / 2 ? (long long)i : (long long)i - n;
    }

    spinor& at_site(long long j) { return v[index_of(j)]; }
    const spinor& at_site(long long j) const { return v[index_of(j)]; }

    bool finite() const;
    void require_finite() const; // throws InvalidFieldError
};

// Trajectory slices at strictly increasing times t in delta*Z>=0, one ring.
struct SpaceTimeField {
    WalkParams params;
    std::vector<double> times;
    std::vector<SpinorField> slices;
};

enum class StateKind { impulse, gaussian, random };

struct StateOptions {
    long long site = 0;         // impulse location, in sites
    double width = 4.0;         // gaussian width w
    double carrier = 0.0;       // gaussian carrier frequency xi0
    double truncate = 0.0;      // gaussian: exact zero for |x| >= truncate (0 = 16*w)
    std::uint64_t seed = 0;     // random
};

// impulse: (1,0) at x=site*delta. gaussian: e^{-x^2/(2w^2)} e^{i xi0 x} (1,0),
// exactly zero beyond the truncation radius so the support (and hence the wrap
// guard) is exact. random: both components uniform in the unit square, splitmix64.
SpinorField make_state(StateKind kind, const WalkParams& p, std::size_t n,
                       const StateOptions& opt = {});

// max |x| over sites with C^2 norm > tol; 0 for the zero field.
double support_radius(const SpinorField& u, double tol);

// Exact finite speed: one site per step. Evolving for t keeps the infinite-lattice
// identity iff support_radius(u,0) + t < N*delta/2.
bool wrap_guard_ok(const SpinorField& u, double t);

// Columnar text format: `# delta=<v> N=<v> mass=<v>` then natural-order rows
// `j re(u1) im(u1) re(u2) im(u2)`. %.17g so a round trip is bit-exact.
void write_field(std::ostream& os, const SpinorField& u);
SpinorField read_field(std::istream& is);
void write_field_file(const std::string& path, const SpinorField& u);
SpinorField read_field_file(const std::string& path);

}
