#include "qwlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>

#include "qwlab/fft.hpp"
#include "qwlab/walk.hpp"

namespace qwlab {

double FrequencyGrid::pi() { return 3.14159265358979323846; }

FrequencyGrid::FrequencyGrid(WalkParams p, std::size_t n_) : params(p), n(n_) {
    if (n == 0 || (n & (n - 1)) != 0)
        throw ParameterError("frequency grid size must be a power of two");
}

mat2 mat2_mul(const mat2& a, const mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

spinor mat2_apply(const mat2& m, const spinor& s) {
    return {m[0] * s[0] + m[1] * s[1], m[2] * s[0] + m[3] * s[1]};
}

double mat2_max_abs(const mat2& m) {
    double r = 0.0;
    for (const auto& e : m) r = std::max(r, std::abs(e));
    return r;
}

namespace {

// Componentwise DFT of the spinor data. Storage order IS DFT order, so the
// transform needs no reindexing: x_j xi_k = 2pi jk / N exactly.
void transform_components(std::vector<spinor>& v, bool forward) {
    const std::size_t n = v.size();
    std::vector<cd> a(n);
    for (int comp = 0; comp < 2; ++comp) {
        for (std::size_t i = 0; i < n; ++i) a[i] = v[i][comp];
        fft(a, forward);
        for (std::size_t i = 0; i < n; ++i) v[i][comp] = a[i];
    }
}

constexpr double kDegenerateTol = 1e-10;

} // namespace

FrequencyField forward_transform(const SpinorField& u) {
    u.require_finite();
    FrequencyField out;
    out.grid = FrequencyGrid(u.params, u.sites());
    out.v = u.v;
    transform_components(out.v, true);
    const double scale = u.params.delta / std::sqrt(2.0 * FrequencyGrid::pi());
    for (auto& s : out.v) {
        s[0] *= scale;
        s[1] *= scale;
    }
    return out;
}

SpinorField inverse_transform(const FrequencyField& v) {
    SpinorField out(v.grid.params, v.grid.n);
    out.v = v.v;
    transform_components(out.v, false);
    const double scale =
        std::sqrt(2.0 * FrequencyGrid::pi()) / (double(v.grid.n) * v.grid.params.delta);
    for (auto& s : out.v) {
        s[0] *= scale;
        s[1] *= scale;
    }
    return out;
}

double dispersion(double xi, const WalkParams& p) {
    double c = std::cos(p.delta * p.mass) * std::cos(p.delta * xi);
    c = std::clamp(c, -1.0, 1.0); // guard rounding at the arccos edges
    return std::acos(c) / p.delta;
}

DispersionDerivs dispersion_derivatives(double xi, const WalkParams& p) {
    const double d = p.delta;
    const double c = std::cos(d * p.mass), s = std::sin(d * p.mass);
    const double th = d * xi;
    const double ct = std::cos(th), st = std::sin(th);
    const double D = 1.0 - c * c * ct * ct;
    if (D <= 0.0)
        throw SingularityError("dispersion derivative denominator vanishes (delta*m in pi*Z)");
    const double rD = std::sqrt(D);
    DispersionDerivs out;
    out.p1 = c * st / rD;
    out.p2 = d * c * s * s * ct / (D * rD);
    out.p3 = -d * d * c * s * s * (1.0 + 2.0 * c * c * ct * ct) * st / (D * D * rD);
    return out;
}

mat2 coin_matrix(const WalkParams& p) {
    const double dm = p.delta * p.mass;
    const double c = std::cos(dm);
    const cd mis(0.0, -std::sin(dm));
    return {cd(c), mis, mis, cd(c)};
}

mat2 symbol_matrix(double xi, const WalkParams& p) {
    const double th = p.delta * xi;
    const cd em(std::cos(th), -std::sin(th));
    const cd ep = std::conj(em);
    mat2 c = coin_matrix(p);
    // diag(e^{-i th}, e^{i th}) * coin
    return {em * c[0], em * c[1], ep * c[2], ep * c[3]};
}

void symbol_projectors(double xi, const WalkParams& p, mat2& qplus, mat2& qminus) {
    const double dp = p.delta * dispersion(xi, p);
    const double sdp = std::sin(dp);
    if (std::fabs(sdp) < kDegenerateTol)
        throw DegenerateSymbolError("eigenvalue collision at xi = " + std::to_string(xi) +
                                    " (|sin(delta p)| < 1e-10)");
    const mat2 u = symbol_matrix(xi, p);
    const cd lp(std::cos(dp), sdp);
    const cd lm = std::conj(lp);
    const cd den = lp - lm; // 2i sin(dp)
    qplus = {(u[0] - lm) / den, u[1] / den, u[2] / den, (u[3] - lm) / den};
    qminus = {cd(1) - qplus[0], -qplus[1], -qplus[2], cd(1) - qplus[3]};
}

SymbolDecomposition spectral_decompose(const WalkParams& p, std::size_t n) {
    SymbolDecomposition out;
    out.grid = FrequencyGrid(p, n);
    out.p.resize(n);
    out.qplus.resize(n);
    out.qminus.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = out.grid.xi(i);
        out.p[i] = dispersion(xi, p);
        symbol_projectors(xi, p, out.qplus[i], out.qminus[i]);
    }
    return out;
}

SpinorField spectral_evolve(const SpinorField& u, double t) {
    u.require_finite();
    steps_of(t, u.params.delta, /*allow_negative=*/true); // grid check only
    FrequencyField v = forward_transform(u);
    const std::size_t n = v.grid.n;
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = v.grid.xi(i);
        mat2 qp, qm;
        symbol_projectors(xi, u.params, qp, qm);
        const double ph = dispersion(xi, u.params) * t;
        const cd ep(std::cos(ph), std::sin(ph));
        const cd em = std::conj(ep);
        mat2 m = {ep * qp[0] + em * qm[0], ep * qp[1] + em * qm[1],
                  ep * qp[2] + em * qm[2], ep * qp[3] + em * qm[3]};
        v.v[i] = mat2_apply(m, v.v[i]);
    }
    return inverse_transform(v);
}

Degeneracies locate_degeneracies(const WalkParams& p) {
    p.require_mass_window();
    const double pi = FrequencyGrid::pi();
    const double hi = pi / p.delta;
    auto p2 = [&](double xi) { return dispersion_derivatives(xi, p).p2; };
    auto p3 = [&](double xi) { return dispersion_derivatives(xi, p).p3; };

    Degeneracies out;
    // p'' = const * cos(delta xi): one sign change in each half line
    auto bis = [&](auto f, double a, double b) {
        double lo = a, hi2 = b;
        double flo = f(lo);
        for (int it = 0; it < 200 && hi2 - lo > 1e-8; ++it) {
            double mid = 0.5 * (lo + hi2);
            double fm = f(mid);
            if ((flo <= 0.0) == (fm <= 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi2 = mid;
            }
        }
        return 0.5 * (lo + hi2);
    };
    double z = bis(p2, 0.25 * hi, 0.75 * hi);
    out.p2_zeros = {-z, z};
    // p''' = -const * (...) * sin(delta xi): zeros at 0 and at the zone edges.
    // The closed form is periodic, so the edge crossing brackets cleanly.
    double z0 = bis(p3, -0.25 * hi, 0.25 * hi);
    double ze = bis(p3, hi - 1e-3, hi + 1e-3);
    out.p3_zeros = {-ze, z0, ze};
    // each zero carries a genuine sign change in its 1e-6 neighborhood
    for (double r : {z, z0, ze}) {
        auto f = (r == z) ? std::function<double(double)>(p2) : std::function<double(double)>(p3);
        if (f(r - 1e-6) * f(r + 1e-6) > 0.0)
            throw SingularityError("degeneracy at xi = " + std::to_string(r) +
                                   " shows no sign change");
    }
    return out;
}

void write_symbol_table(std::ostream& os, const WalkParams& p, std::size_t n) {
    SymbolDecomposition dec = spectral_decompose(p, n);
    os << "k,xi,p,pprime,pdprime,ptprime";
    const char* sides[2] = {"+", "-"};
    for (const char* s : sides)
        for (int r = 1; r <= 2; ++r)
            for (int c = 1; c <= 2; ++c)
                os << ",reQ" << s << r << c << ",imQ" << s << r << c;
    os << "\n";
    char buf[64];
    auto put = [&](double x) {
        std::snprintf(buf, sizeof buf, "%.17g", x);
        os << ',' << buf;
    };
    const long long half = (long long)n / 2;
    for (long long k = -half; k < half; ++k) {
        std::size_t i = (std::size_t)(k >= 0 ? k : k + (long long)n);
        const double xi = dec.grid.xi(i);
        DispersionDerivs dd = dispersion_derivatives(xi, p);
        os << k;
        put(xi);
        put(dec.p[i]);
        put(dd.p1);
        put(dd.p2);
        put(dd.p3);
        for (const auto* q : {&dec.qplus[i], &dec.qminus[i]})
            for (const auto& e : *q) {
                put(e.real());
                put(e.imag());
            }
        os << "\n";
    }
    Degeneracies deg = locate_degeneracies(p);
    os << "# pdprime_zeros=";
    for (std::size_t i = 0; i < deg.p2_zeros.size(); ++i)
        os << (i ? "," : "") << deg.p2_zeros[i];
    os << "\n# ptprime_zeros=";
    for (std::size_t i = 0; i < deg.p3_zeros.size(); ++i)
        os << (i ? "," : "") << deg.p3_zeros[i];
    os << "\n";
}

}
