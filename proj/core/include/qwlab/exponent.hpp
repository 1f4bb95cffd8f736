#pragma once

#include <limits>
#include <numeric>
#include <string>

#include "qwlab/errors.hpp"

namespace qwlab {

// Lebesgue exponent as an exact extended rational in [1, inf]. den == 0 encodes inf.
// Exactness matters: admissibility (3/p + 1/q = 1/2) is an identity, not a tolerance.
struct Exponent {
    long long num = 1;
    long long den = 1;

    Exponent() = default;
    Exponent(long long n, long long d) : num(n), den(d) { normalize(); }
    static Exponent inf() { return Exponent(1, 0); }
    static Exponent integer(long long n) { return Exponent(n, 1); }

    void normalize() {
        if (den == 0) { num = 1; return; }
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num < den || num <= 0)
            throw ParameterError("exponent must lie in [1, inf]: " + str());
    }

    bool is_inf() const { return den == 0; }
    double value() const {
        return is_inf() ? std::numeric_limits<double>::infinity()
                        : double(num) / double(den);
    }
    // 1/p as an exact double (den/num); 0 for inf. Used for fractional weights.
    double inv() const { return is_inf() ? 0.0 : double(den) / double(num); }

    // Hoelder conjugate: 1/p + 1/p' = 1. p=1 -> inf, p=inf -> 1.
    Exponent conjugate() const {
        if (is_inf()) return Exponent(1, 1);
        if (num == den) return inf();
        return Exponent(num, num - den);
    }

    bool operator==(const Exponent& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Exponent& o) const { return !(*this == o); }

    std::string str() const {
        if (is_inf()) return "inf";
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    // Accepts "inf", integers ("6"), and rationals ("10/3").
    static Exponent parse(const std::string& tok);
};

}
