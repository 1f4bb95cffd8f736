#include "qwlab/norms.hpp"

#include <algorithm>
#include <cmath>

namespace qwlab {

double field_norm(const SpinorField& u, const Exponent& p) {
    u.require_finite();
    if (p.is_inf()) {
        double m = 0.0;
        for (const auto& s : u.v)
            m = std::max(m, std::sqrt(std::norm(s[0]) + std::norm(s[1])));
        return m;
    }
    const double pv = p.value();
    double acc = 0.0;
    if (p.num == 2 && p.den == 1) {
        for (const auto& s : u.v) acc += std::norm(s[0]) + std::norm(s[1]);
        return std::sqrt(u.delta() * acc);
    }
    for (const auto& s : u.v) {
        double a = std::sqrt(std::norm(s[0]) + std::norm(s[1]));
        acc += std::pow(a, pv);
    }
    return std::pow(u.delta() * acc, 1.0 / pv);
}

void MixedNormAccum::add_slice_norm(double nq) {
    if (p.is_inf())
        acc = std::max(acc, nq);
    else
        acc += std::pow(nq, p.value());
    ++count;
}

double MixedNormAccum::value() const {
    if (count == 0) throw EmptyWindowError("mixed norm over an empty time window");
    if (p.is_inf()) return acc;
    return std::pow(delta * acc, 1.0 / p.value());
}

double mixed_norm(const SpaceTimeField& f, const NormSpec& spec) {
    if (f.slices.empty()) throw EmptyWindowError("mixed norm over an empty time window");
    MixedNormAccum acc(spec.p, f.params.delta);
    for (const auto& s : f.slices) acc.add_slice(s, spec.q);
    return acc.value();
}

}
