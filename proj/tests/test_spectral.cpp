#include "doctest.h"

#include <cmath>
#include <sstream>
#include <string>

#include "qwlab/field.hpp"
#include "qwlab/norms.hpp"
#include "qwlab/oracles.hpp"
#include "qwlab/rng.hpp"
#include "qwlab/spectral.hpp"
#include "qwlab/walk.hpp"

using namespace qwlab;

namespace {

const double kPi = std::acos(-1.0);

double max_site_diff(const SpinorField& a, const SpinorField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.sites(); ++i) {
        m = std::max(m, std::abs(a.v[i][0] - b.v[i][0]));
        m = std::max(m, std::abs(a.v[i][1] - b.v[i][1]));
    }
    return m;
}

double mat_diff(const mat2& a, const mat2& b) {
    double m = 0.0;
    for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace

TEST_CASE("transform: impulse goes to the flat symbol delta/sqrt(2pi)") {
    FrequencyField f =
        forward_transform(make_state(StateKind::impulse, WalkParams(1.0, 1.0), 64));
    double expect = 1.0 / std::sqrt(2.0 * kPi);
    for (std::size_t i = 0; i < 64; ++i) {
        CHECK(std::abs(f.v[i][0] - cd(expect)) < 1e-14);
        CHECK(std::abs(f.v[i][1]) < 1e-14);
    }
}

TEST_CASE("transform: matches the direct DFT sums and round-trips") {
    StateOptions opt;
    opt.seed = 17;
    SpinorField u = make_state(StateKind::random, WalkParams(0.5, 1.0), 128, opt);
    FrequencyField fast = forward_transform(u);
    FrequencyField slow = oracle::forward_transform_direct(u);
    for (std::size_t i = 0; i < 128; ++i) {
        CHECK(std::abs(fast.v[i][0] - slow.v[i][0]) < 1e-12);
        CHECK(std::abs(fast.v[i][1] - slow.v[i][1]) < 1e-12);
    }
    CHECK(max_site_diff(inverse_transform(fast), u) < 1e-12);
}

TEST_CASE("transform: Plancherel identity") {
    StateOptions opt;
    opt.seed = 23;
    SpinorField u = make_state(StateKind::random, WalkParams(0.25, 1.0), 256, opt);
    FrequencyField f = forward_transform(u);
    double lhs = 0.0;
    for (const auto& s : f.v)
        lhs += std::norm(s[0]) + std::norm(s[1]);
    lhs *= f.grid.delta_xi();
    double rhs = std::pow(field_norm(u, Exponent::integer(2)), 2);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("dispersion: closed values") {
    CHECK(dispersion(0.0, WalkParams(1.0, 1.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(dispersion(0.0, WalkParams(0.5, -0.7)) == doctest::Approx(0.7).epsilon(1e-14));
    // Massless walk: p(xi) = |xi| inside the zone.
    CHECK(dispersion(0.3, WalkParams(0.5, 0.0)) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(dispersion(-1.2, WalkParams(0.5, 0.0)) == doctest::Approx(1.2).epsilon(1e-14));
    // Small-delta limit approaches the relativistic relation sqrt(m^2 + xi^2).
    CHECK(std::abs(dispersion(1.0, WalkParams(1e-3, 1.0)) - std::sqrt(2.0)) < 1e-3);
}

TEST_CASE("dispersion: derivative values at distinguished points") {
    WalkParams p(0.5, 1.0);
    DispersionDerivs mid = dispersion_derivatives(kPi / (2 * p.delta), p);
    CHECK(std::abs(mid.p1 - std::cos(p.delta * p.mass)) < 1e-13);
    CHECK(std::abs(mid.p2) < 1e-13);
    DispersionDerivs org = dispersion_derivatives(0.0, p);
    CHECK(std::abs(org.p1) < 1e-15);
    CHECK(std::abs(org.p3) < 1e-15);
    CHECK(org.p2 > 0.0);
}

TEST_CASE("dispersion: parity of the derivative ladder") {
    WalkParams p(0.25, 1.0);
    Rng rng(91);
    for (int k = 0; k < 50; ++k) {
        double xi = rng.next_double() * kPi / p.delta;
        DispersionDerivs a = dispersion_derivatives(xi, p);
        DispersionDerivs b = dispersion_derivatives(-xi, p);
        CHECK(dispersion(xi, p) == doctest::Approx(dispersion(-xi, p)).epsilon(1e-14));
        CHECK(a.p1 == doctest::Approx(-b.p1).epsilon(1e-12));
        CHECK(a.p2 == doctest::Approx(b.p2).epsilon(1e-12));
        CHECK(a.p3 == doctest::Approx(-b.p3).epsilon(1e-12));
    }
}

TEST_CASE("dispersion: closed derivatives match finite differences") {
    for (double delta : {1.0, 0.5}) {
        WalkParams p(delta, 1.0);
        Degeneracies deg = locate_degeneracies(p);
        Rng rng(57);
        int tested = 0;
        for (int k = 0; tested < 200 && k < 2000; ++k) {
            double xi = rng.next_double() * kPi / delta;
            bool near = false;
            for (double z : deg.p2_zeros) near = near || std::abs(xi - z) < 1e-3;
            for (double z : deg.p3_zeros) near = near || std::abs(xi - z) < 1e-3;
            if (near || std::abs(std::abs(xi) - kPi / delta) < 1e-3) continue;
            ++tested;
            DispersionDerivs c = dispersion_derivatives(xi, p);
            DispersionDerivs f = oracle::fd_derivatives(xi, p);
            CHECK(std::abs(c.p1 - f.p1) <= 1e-6 * std::abs(f.p1));
            CHECK(std::abs(c.p2 - f.p2) <= 1e-6 * std::abs(f.p2));
            CHECK(std::abs(c.p3 - f.p3) <= 1e-6 * std::abs(f.p3));
        }
        CHECK(tested == 200);
    }
}

TEST_CASE("dispersion: group velocity stays subluminal, curvature positive low") {
    WalkParams p(0.5, 1.0);
    Rng rng(3);
    for (int k = 0; k < 100; ++k) {
        double xi = rng.next_double() * kPi / p.delta;
        DispersionDerivs d = dispersion_derivatives(xi, p);
        CHECK(std::abs(d.p1) <= 1.0 + 1e-14);
        if (std::abs(xi) <= 1.0 / p.delta) CHECK(d.p2 > 0.0);
    }
}

TEST_CASE("symbol: massless diagonal and quarter-turn cases") {
    WalkParams free_p(0.5, 0.0);
    double xi = 0.7;
    mat2 m = symbol_matrix(xi, free_p);
    cd e_minus = std::exp(cd(0.0, -free_p.delta * xi));
    cd e_plus = std::exp(cd(0.0, free_p.delta * xi));
    CHECK(std::abs(m[0] - e_minus) < 1e-15);
    CHECK(std::abs(m[1]) < 1e-15);
    CHECK(std::abs(m[2]) < 1e-15);
    CHECK(std::abs(m[3] - e_plus) < 1e-15);

    // xi = 0, delta*m = pi/2: the symbol collapses to -i sigma_1.
    mat2 q = symbol_matrix(0.0, WalkParams(1.0, kPi / 2));
    CHECK(std::abs(q[0]) < 1e-15);
    CHECK(std::abs(q[1] - cd(0.0, -1.0)) < 1e-15);
    CHECK(std::abs(q[2] - cd(0.0, -1.0)) < 1e-15);
    CHECK(std::abs(q[3]) < 1e-15);
}

TEST_CASE("symbol: trace identity tr U = 2 cos(delta p)") {
    WalkParams p(0.25, 1.0);
    FrequencyGrid g(p, 512);
    for (std::size_t i = 0; i < 512; ++i) {
        double xi = g.xi(i);
        mat2 m = symbol_matrix(xi, p);
        cd tr = m[0] + m[3];
        double expect = 2.0 * std::cos(p.delta * dispersion(xi, p));
        CHECK(std::abs(tr - cd(expect)) < 1e-13);
    }
}

TEST_CASE("projectors: algebra and reconstruction on the whole grid") {
    WalkParams p(0.5, 1.0);
    SymbolDecomposition dec = spectral_decompose(p, 1024);
    double worst = 0.0;
    for (std::size_t i = 0; i < 1024; ++i) {
        const mat2& qp = dec.qplus[i];
        const mat2& qm = dec.qminus[i];
        mat2 sum{qp[0] + qm[0], qp[1] + qm[1], qp[2] + qm[2], qp[3] + qm[3]};
        worst = std::max(worst, mat_diff(sum, mat2_identity()));
        worst = std::max(worst, mat_diff(mat2_mul(qp, qp), qp));
        worst = std::max(worst, mat_diff(mat2_mul(qm, qm), qm));
        mat2 cross = mat2_mul(qp, qm);
        for (int e = 0; e < 4; ++e) worst = std::max(worst, std::abs(cross[e]));

        cd ep = std::exp(cd(0.0, p.delta * dec.p[i]));
        cd em = std::exp(cd(0.0, -p.delta * dec.p[i]));
        mat2 rec{ep * qp[0] + em * qm[0], ep * qp[1] + em * qm[1],
                 ep * qp[2] + em * qm[2], ep * qp[3] + em * qm[3]};
        worst = std::max(worst, mat_diff(rec, symbol_matrix(dec.grid.xi(i), p)));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("projectors: entries stay bounded down the delta ladder") {
    auto max_entry = [](const WalkParams& p) {
        SymbolDecomposition dec = spectral_decompose(p, 2048);
        double m = 0.0;
        for (std::size_t i = 0; i < dec.qplus.size(); ++i)
            m = std::max({m, mat2_max_abs(dec.qplus[i]), mat2_max_abs(dec.qminus[i])});
        return m;
    };
    double base = max_entry(WalkParams(1.0, 1.0));
    for (double d : {0.5, 0.25, 0.125, 0.0625})
        CHECK(max_entry(WalkParams(d, 1.0)) <= 2.0 * base);
}

TEST_CASE("spectral_evolve: identity at t = 0 and agreement with stepping") {
    WalkParams p(0.25, 1.0);
    StateOptions opt;
    opt.seed = 40;
    SpinorField u = make_state(StateKind::random, p, 512, opt);

    CHECK(max_site_diff(spectral_evolve(u, 0.0), u) < 1e-13);

    SpinorField a = spectral_evolve(u, 100 * p.delta);
    SpinorField b = evolve(u, 100 * p.delta).field;
    double scale = field_norm(u, Exponent::integer(2));
    SpinorField d = a;
    for (std::size_t i = 0; i < d.sites(); ++i) {
        d.v[i][0] -= b.v[i][0];
        d.v[i][1] -= b.v[i][1];
    }
    CHECK(field_norm(d, Exponent::integer(2)) < 1e-10 * scale);
}

TEST_CASE("spectral_evolve: negative time inverts the dynamics") {
    WalkParams p(0.5, 1.0);
    StateOptions opt;
    opt.seed = 41;
    SpinorField u = make_state(StateKind::random, p, 256, opt);
    SpinorField back = spectral_evolve(evolve(u, 50 * p.delta).field, -50 * p.delta);
    CHECK(max_site_diff(back, u) < 1e-11);
}

TEST_CASE("degeneracies: located to 1e-8") {
    Degeneracies a = locate_degeneracies(WalkParams(1.0, 1.0));
    REQUIRE(a.p2_zeros.size() == 2);
    CHECK(std::abs(a.p2_zeros[0] + kPi / 2) < 1e-8);
    CHECK(std::abs(a.p2_zeros[1] - kPi / 2) < 1e-8);
    REQUIRE(a.p3_zeros.size() == 3);
    CHECK(std::abs(a.p3_zeros[0] + kPi) < 1e-8);
    CHECK(std::abs(a.p3_zeros[1]) < 1e-8);
    CHECK(std::abs(a.p3_zeros[2] - kPi) < 1e-8);

    Degeneracies b = locate_degeneracies(WalkParams(0.5, 1.0));
    REQUIRE(b.p2_zeros.size() == 2);
    CHECK(std::abs(b.p2_zeros[1] - kPi) < 1e-8);
    REQUIRE(b.p3_zeros.size() == 3);
    CHECK(std::abs(b.p3_zeros[0] + 2 * kPi) < 1e-8);
    CHECK(std::abs(b.p3_zeros[1]) < 1e-8);
    CHECK(std::abs(b.p3_zeros[2] - 2 * kPi) < 1e-8);

    // The zeros are genuine: the closed forms vanish there.
    for (double z : a.p2_zeros)
        CHECK(std::abs(dispersion_derivatives(z, WalkParams(1.0, 1.0)).p2) < 1e-7);
    for (double z : b.p3_zeros)
        CHECK(std::abs(dispersion_derivatives(z, WalkParams(0.5, 1.0)).p3) < 1e-7);
}

TEST_CASE("symbol table: header shape and parseable rows") {
    std::ostringstream os;
    write_symbol_table(os, WalkParams(0.5, 1.0), 16);
    std::istringstream is(os.str());
    std::string header;
    std::getline(is, header);
    CHECK(header.substr(0, 33) == "k,xi,p,pprime,pdprime,ptprime,reQ");
    int rows = 0;
    bool saw_zero_locations = false;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') { // trailer comments list the derivative zeros
            saw_zero_locations = saw_zero_locations ||
                                 line.find("zeros=") != std::string::npos;
            continue;
        }
        ++rows;
        // Every row: k plus 21 numeric columns.
        int commas = 0;
        for (char c : line) commas += c == ',';
        CHECK(commas == 21);
        std::size_t pos = line.find(',');
        double xi = std::stod(line.substr(pos + 1));
        CHECK(std::abs(xi) <= kPi / 0.5 + 1e-12);
    }
    CHECK(rows == 16);
    CHECK(saw_zero_locations);
}
