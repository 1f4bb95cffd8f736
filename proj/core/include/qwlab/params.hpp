#pragma once

#include <cmath>
#include <string>

#include "qwlab/errors.hpp"

namespace qwlab {

// Lattice width and coin mass. delta is dimensionless length; sites live on delta*Z.
struct WalkParams {
    double delta = 1.0;
    double mass = 1.0;

    WalkParams() = default;
    WalkParams(double delta_, double mass_) : delta(delta_), mass(mass_) {
        if (!(delta > 0.0) || delta > 1.0 || !std::isfinite(delta))
            throw ParameterError("delta must lie in (0, 1], got " + std::to_string(delta_));
        if (!std::isfinite(mass))
            throw ParameterError("mass must be finite");
    }

    // delta*|mass| in (0, pi/2): outside it sin^2(dm)*cos(dm) vanishes and the walk
    // stops dispersing. Enforced for estimate runs, not for bare evolution.
    bool mass_window_ok() const {
        double dm = delta * std::fabs(mass);
        return dm > 0.0 && dm < std::asin(1.0); // pi/2
    }
    void require_mass_window() const {
        if (!mass_window_ok())
            throw ParameterError("delta*|mass| must lie in (0, pi/2); delta=" +
                                 std::to_string(delta) + " mass=" + std::to_string(mass));
    }
};

}
