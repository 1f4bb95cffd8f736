#pragma once

#include "qwlab/exponent.hpp"
#include "qwlab/field.hpp"

namespace qwlab {

struct NormSpec {
    Exponent p; // outer, over time
    Exponent q; // inner, over space
};

// l^p_delta: (delta * sum_x |u(x)|_{C^2}^p)^{1/p}, max over sites for p = inf.
double field_norm(const SpinorField& u, const Exponent& p);

// Mixed l^p_delta l^q_delta over a trajectory: delta weights BOTH sums.
double mixed_norm(const SpaceTimeField& f, const NormSpec& spec);

// Streaming accumulator for long trajectories: feed slice norms one at a time,
// never materializing a SpaceTimeField.
struct MixedNormAccum {
    Exponent p;
    double delta;
    double acc = 0.0; // sum of slice_norm^p (finite p) or running max (inf)
    long long count = 0;

    MixedNormAccum(Exponent p_, double delta_) : p(p_), delta(delta_) {}
    void add_slice_norm(double nq);
    void add_slice(const SpinorField& u, const Exponent& q) {
        add_slice_norm(field_norm(u, q));
    }
    double value() const; // throws EmptyWindowError if nothing was fed
};

}
