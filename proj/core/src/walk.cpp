#include "qwlab/walk.hpp"

#include <cmath>

namespace qwlab {

long long steps_of(double t, double delta, bool allow_negative) {
    double raw = t / delta;
    double rounded = std::nearbyint(raw);
    if (std::fabs(raw - rounded) > 1e-9)
        throw TimeGridError("t = " + std::to_string(t) + " is not a multiple of delta = " +
                            std::to_string(delta));
    if (!allow_negative && rounded < 0.0)
        throw TimeGridError("t must be nonnegative, got " + std::to_string(t));
    return (long long)rounded;
}

SpinorField coin_apply(const SpinorField& u) {
    const double dm = u.params.delta * u.params.mass;
    const double c = std::cos(dm);
    const cd mis(0.0, -std::sin(dm));
    SpinorField out = u;
    for (auto& s : out.v) {
        cd a = s[0], b = s[1];
        s[0] = c * a + mis * b;
        s[1] = mis * a + c * b;
    }
    return out;
}

SpinorField shift_apply(const SpinorField& u) {
    const std::size_t n = u.sites();
    SpinorField out(u.params, n);
    for (std::size_t i = 0; i < n; ++i) {
        // component 1 from the left neighbor, component 2 from the right
        out.v[i][0] = u.v[(i + n - 1) % n][0];
        out.v[i][1] = u.v[(i + 1) % n][1];
    }
    return out;
}

SpinorField step(const SpinorField& u) {
    const double dm = u.params.delta * u.params.mass;
    const double c = std::cos(dm);
    const cd mis(0.0, -std::sin(dm));
    const std::size_t n = u.sites();
    SpinorField out(u.params, n);
    // fused coin+shift: out1(i) = coin row 1 at i-1, out2(i) = coin row 2 at i+1
    for (std::size_t i = 0; i < n; ++i) {
        const auto& l = u.v[(i + n - 1) % n];
        const auto& r = u.v[(i + 1) % n];
        out.v[i][0] = c * l[0] + mis * l[1];
        out.v[i][1] = mis * r[0] + c * r[1];
    }
    return out;
}

Evolved evolve(const SpinorField& u, double t) {
    u.require_finite();
    long long nsteps = steps_of(t, u.params.delta);
    Evolved res{u, wrap_guard_ok(u, t)};
    for (long long k = 0; k < nsteps; ++k) res.field = step(res.field);
    return res;
}

}
