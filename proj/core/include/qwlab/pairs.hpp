#pragma once

#include "qwlab/exponent.hpp"

namespace qwlab {

enum class PairKind { discrete, continuous };

// Exponent pair on the sharp line: discrete 3/p + 1/q = 1/2, continuous
// 2/p + 1/q = 1/2, both with p, q in [2, inf] and 1/inf = 0. Checked in exact
// integer arithmetic.
struct AdmissiblePair {
    Exponent p;
    Exponent q;
    PairKind kind = PairKind::discrete;
};

bool admissible_check(const Exponent& p, const Exponent& q, PairKind kind);

// The q solving the relation for a given p, if it lands in [2, inf].
// Returns false when no admissible partner exists.
bool admissible_partner(const Exponent& p, PairKind kind, Exponent& q_out);

// Throws PairError unless admissible.
void require_admissible(const AdmissiblePair& pair);

}
