#include "qwlab/pairs.hpp"

#include <cstdlib>

namespace qwlab {

Exponent Exponent::parse(const std::string& tok) {
    if (tok == "inf" || tok == "Inf" || tok == "INF") return Exponent::inf();
    auto slash = tok.find('/');
    try {
        if (slash == std::string::npos) {
            std::size_t pos = 0;
            long long n = std::stoll(tok, &pos);
            if (pos != tok.size()) throw ParameterError("");
            return Exponent(n, 1);
        }
        std::size_t p1 = 0, p2 = 0;
        long long n = std::stoll(tok.substr(0, slash), &p1);
        long long d = std::stoll(tok.substr(slash + 1), &p2);
        if (p1 != slash || p2 != tok.size() - slash - 1) throw ParameterError("");
        return Exponent(n, d);
    } catch (const std::exception&) {
        throw ParameterError("cannot parse exponent token '" + tok + "'");
    }
}

namespace {

// 1/x as an exact fraction (den, num); 1/inf = (0, 1).
struct Frac {
    long long n, d;
};
Frac inv_of(const Exponent& e) {
    if (e.is_inf()) return {0, 1};
    return {e.den, e.num};
}
// a/b + c/d == p/q, all exact.
bool sum_equals(Frac a, Frac b, long long p, long long q) {
    // a.n/a.d + b.n/b.d = (a.n*b.d + b.n*a.d) / (a.d*b.d)
    long long num = a.n * b.d + b.n * a.d;
    long long den = a.d * b.d;
    return num * q == p * den;
}

bool at_least_two(const Exponent& e) {
    return e.is_inf() || e.num >= 2 * e.den;
}

} // namespace

bool admissible_check(const Exponent& p, const Exponent& q, PairKind kind) {
    if (!at_least_two(p) || !at_least_two(q)) return false;
    Frac ip = inv_of(p), iq = inv_of(q);
    long long scale = kind == PairKind::discrete ? 3 : 2;
    return sum_equals({scale * ip.n, ip.d}, iq, 1, 2);
}

bool admissible_partner(const Exponent& p, PairKind kind, Exponent& q_out) {
    if (!at_least_two(p)) return false;
    // 1/q = 1/2 - s/p with s = 3 or 2
    long long s = kind == PairKind::discrete ? 3 : 2;
    Frac ip = inv_of(p);
    long long num = ip.d - 2 * s * ip.n; // (1/2 - s/p) = (d - 2 s n) / (2 d)
    long long den = 2 * ip.d;
    if (num < 0) return false;
    if (num == 0) {
        q_out = Exponent::inf();
        return true;
    }
    Exponent q(den, num); // q = 1/(1/q)
    if (!at_least_two(q)) return false;
    q_out = q;
    return true;
}

void require_admissible(const AdmissiblePair& pair) {
    if (!admissible_check(pair.p, pair.q, pair.kind))
        throw PairError("pair (" + pair.p.str() + ", " + pair.q.str() + ") is not " +
                        (pair.kind == PairKind::discrete ? "discrete" : "continuous") +
                        "-admissible");
}

}
