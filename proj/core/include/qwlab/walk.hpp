#pragma once

#include "qwlab/field.hpp"

namespace qwlab {

// Pointwise coin e^{-i delta m sigma1} = [[cos dm, -i sin dm], [-i sin dm, cos dm]].
SpinorField coin_apply(const SpinorField& u);

// (S u)(x) = (u1(x - delta), u2(x + delta)), periodic on the ring.
SpinorField shift_apply(const SpinorField& u);

// One walk step: shift after coin (the coin acts first).
SpinorField step(const SpinorField& u);

struct Evolved {
    SpinorField field;
    bool wrap_ok; // support_radius(u,0) + t < N*delta/2 held at the start
};

// t/delta applications of step; t must be a nonnegative integer multiple of
// delta (TimeGridError otherwise). A wrap-guard violation is not fatal: the
// ring dynamics is still well-defined, it just stops standing in for delta*Z.
Evolved evolve(const SpinorField& u, double t);

// t as an exact step count, validated against the grid.
long long steps_of(double t, double delta, bool allow_negative = false);

}
