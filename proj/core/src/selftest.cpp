#include "qwlab/selftest.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "qwlab/estimates.hpp"
#include "qwlab/kernel.hpp"
#include "qwlab/multipliers.hpp"
#include "qwlab/oracles.hpp"
#include "qwlab/spectral.hpp"
#include "qwlab/walk.hpp"

namespace qwlab {

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

double rel_err(const SpinorField& a, const SpinorField& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.v.size(); ++i)
        for (int c = 0; c < 2; ++c) {
            num += std::norm(a.v[i][c] - b.v[i][c]);
            den += std::norm(b.v[i][c]);
        }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

SpinorField random_field(const WalkParams& p, std::size_t n, std::uint64_t seed) {
    StateOptions opt;
    opt.seed = seed;
    return make_state(StateKind::random, p, n, opt);
}

struct Suite {
    std::vector<SelfTestResult> results;
    void check(const std::string& name, double err, double tol) {
        results.push_back({name, err <= tol, "err " + fmt(err) + " tol " + fmt(tol)});
    }
    void check_true(const std::string& name, bool ok, const std::string& detail) {
        results.push_back({name, ok, detail});
    }
};

} // namespace

std::vector<SelfTestResult> run_selftest() {
    Suite s;

    // transforms against the O(N^2) definition, and the exact round trip
    {
        WalkParams p(0.5, 1.0);
        SpinorField u = random_field(p, 256, 11);
        FrequencyField fast = forward_transform(u);
        FrequencyField slow = oracle::forward_transform_direct(u);
        double err = 0.0, den = 0.0;
        for (std::size_t i = 0; i < fast.v.size(); ++i)
            for (int c = 0; c < 2; ++c) {
                err += std::norm(fast.v[i][c] - slow.v[i][c]);
                den += std::norm(slow.v[i][c]);
            }
        s.check("fft vs direct dft", std::sqrt(err / den), 1e-13);
        s.check("transform round trip", rel_err(inverse_transform(fast), u), 1e-13);

        double space = 0.0, freq = 0.0;
        for (const auto& sp : u.v) space += std::norm(sp[0]) + std::norm(sp[1]);
        space *= p.delta;
        for (const auto& sp : fast.v) freq += std::norm(sp[0]) + std::norm(sp[1]);
        freq *= fast.grid.delta_xi();
        s.check("plancherel", std::fabs(space - freq) / space, 1e-13);
    }

    // stepping against the spectral path and against a dense one-step matrix
    {
        WalkParams p(0.25, 1.0);
        SpinorField u = random_field(p, 1024, 7);
        double t = 200.0 * p.delta;
        Evolved ev = evolve(u, t);
        s.check("evolve vs spectral_evolve", rel_err(ev.field, spectral_evolve(u, t)), 1e-11);
    }
    {
        WalkParams p(1.0, 0.7);
        SpinorField u = random_field(p, 64, 3);
        double t = 16.0;
        s.check("evolve vs dense matrix", rel_err(evolve(u, t).field, oracle::dense_evolve(u, t)),
                1e-12);
    }

    // dispersion derivatives against long-double finite differences
    {
        WalkParams p(0.5, 1.0);
        double worst = 0.0;
        for (double xi : {0.3, 1.1, 2.0, -2.7, 4.9}) {
            DispersionDerivs cf = dispersion_derivatives(xi, p);
            DispersionDerivs fd = oracle::fd_derivatives(xi, p);
            worst = std::max(worst, std::fabs(cf.p1 - fd.p1) / std::fabs(fd.p1));
            worst = std::max(worst, std::fabs(cf.p2 - fd.p2) / std::fabs(fd.p2));
            worst = std::max(worst, std::fabs(cf.p3 - fd.p3) / std::fabs(fd.p3));
        }
        s.check("dispersion derivatives vs fd", worst, 1e-7);

        Degeneracies deg = locate_degeneracies(p);
        double hi = FrequencyGrid::pi() / p.delta;
        double err = 0.0;
        for (double z : deg.p2_zeros) err = std::max(err, std::fabs(std::fabs(z) - hi / 2.0));
        s.check_true("p'' zeros at +-pi/(2 delta)",
                     deg.p2_zeros.size() == 2 && err < 1e-7, "err " + fmt(err));
        bool p3ok = deg.p3_zeros.size() == 3;
        double err3 = 0.0;
        if (p3ok) {
            err3 = std::fabs(deg.p3_zeros[0] + hi);
            err3 = std::max(err3, std::fabs(deg.p3_zeros[1]));
            err3 = std::max(err3, std::fabs(deg.p3_zeros[2] - hi));
        }
        s.check_true("p''' zeros at 0, +-pi/delta", p3ok && err3 < 1e-7, "err " + fmt(err3));
    }

    // bump algebra: midpoint symmetry, the partition telescope, the enlargement
    {
        double mid = std::fabs(bump_phi(1.5) - 0.5);
        s.check("phi(3/2) = 1/2", mid, 1e-15);
        s.check_true("phi plateau and support",
                     bump_phi(1.0) == 1.0 && bump_phi(-1.0) == 1.0 && bump_phi(2.0) == 0.0 &&
                         bump_phi(2.5) == 0.0,
                     "endpoints");

        WalkParams p(0.5, 1.0);
        FrequencyGrid g(p, 512);
        std::vector<double> lams = dyadic_lambdas(g);
        double worst = 0.0;
        for (std::size_t i = 1; i < g.n; ++i) {
            double sum = 0.0;
            for (double l : lams) sum += psi_lambda(g.xi(i), l, p);
            worst = std::max(worst, std::fabs(sum - 1.0));
        }
        s.check("dyadic partition telescopes to 1", worst, 1e-12);

        double worst2 = 0.0;
        for (std::size_t i = 0; i < g.n; ++i)
            for (double l : lams) {
                double a = psi_lambda(g.xi(i), l, p);
                double b = bump_psi_tilde(g.xi(i) / l);
                worst2 = std::max(worst2, std::fabs(a - a * b));
            }
        s.check("psi_tilde covers psi", worst2, 1e-15);
    }

    // kernel representation of the projected evolution, small and fast. The band
    // sits flush with the zone edge, where the bump is flat to all orders: the
    // quadrature kernel is then smooth on the torus and its wrap-around tail at
    // the ring edge is what the tolerance measures.
    {
        WalkParams p(1.0, 1.0);
        SpinorField u = random_field(p, 128, 19);
        double lambda = FrequencyGrid::pi(), t = 8.0;
        SpinorField via_kernel = kernel_convolve(u, lambda, t, 4);
        SpinorField direct = littlewood_paley(spectral_evolve(u, t), lambda);
        double l2 = field_norm(u, Exponent::integer(2));
        double err = 0.0;
        for (std::size_t i = 0; i < u.v.size(); ++i)
            for (int c = 0; c < 2; ++c) err += std::norm(via_kernel.v[i][c] - direct.v[i][c]);
        err = std::sqrt(p.delta * err);
        s.check("kernel representation", err / l2, 1e-6);
    }

    // Duhamel by hand: massless coin is the identity, the walk is a pure shift
    {
        WalkParams p(1.0, 0.0);
        SpaceTimeField f;
        f.params = p;
        for (int k = 0; k <= 2; ++k) {
            SpinorField slice(p, 8);
            slice.at_site(0) = {cd(1.0), cd(0.0)};
            f.times.push_back(double(k));
            f.slices.push_back(slice);
        }
        SpinorField d = duhamel(f, 2.0);
        double err = 0.0;
        for (std::size_t i = 0; i < d.v.size(); ++i) {
            long long j = d.site_of(i);
            cd want1 = (j == 0 || j == 1 || j == 2) ? cd(1.0) : cd(0.0);
            err += std::abs(d.v[i][0] - want1) + std::abs(d.v[i][1]);
        }
        s.check("duhamel hand case", err, 0.0);
    }

    // estimate plumbing: exact synthetic slope, endpoint identity, triangle bound
    {
        std::vector<RatioRecord> recs;
        for (int k = 1; k <= 8; ++k) {
            RatioRecord r;
            r.t_or_T = double(k);
            r.lhs = 3.0 * std::pow(double(k), -0.5);
            recs.push_back(r);
        }
        SlopeFit fit = decay_slope_fit(recs);
        s.check("synthetic slope fit", std::fabs(fit.slope + 0.5), 1e-12);
    }
    {
        AdmissiblePair inf2{Exponent::inf(), Exponent::integer(2), PairKind::discrete};
        AdmissiblePair six_inf{Exponent::integer(6), Exponent::inf(), PairKind::discrete};
        Exponent q_of_inf, q_of_six;
        bool partners =
            admissible_partner(Exponent::inf(), PairKind::discrete, q_of_inf) &&
            q_of_inf == Exponent::integer(2) &&
            admissible_partner(Exponent::integer(6), PairKind::discrete, q_of_six) &&
            q_of_six == Exponent::inf();
        s.check_true("admissibility arithmetic",
                     admissible_check(inf2.p, inf2.q, inf2.kind) &&
                         admissible_check(six_inf.p, six_inf.q, six_inf.kind) && partners,
                     "(inf,2), (6,inf)");

        WalkParams p(1.0, 1.0);
        SpinorField u = random_field(p, 256, 23);
        RatioRecord hom = homogeneous_ratio(u, inf2, 16.0);
        s.check("endpoint homogeneous ratio = 1", std::fabs(hom.ratio - 1.0), 1e-12);

        SpaceTimeField f;
        f.params = p;
        for (int k = 0; k <= 16; ++k) {
            f.times.push_back(double(k));
            f.slices.push_back(random_field(p, 256, 100 + (std::uint64_t)k));
        }
        RatioRecord inh = inhomogeneous_ratio(f, inf2, inf2, 16.0);
        s.check_true("endpoint inhomogeneous ratio <= 1",
                     inh.ratio <= 1.0 + 1e-12, "ratio " + fmt(inh.ratio));
    }

    return s.results;
}

bool report_selftest(std::ostream& os, const std::vector<SelfTestResult>& results) {
    bool all = true;
    for (const auto& r : results) {
        if (r.pass) {
            os << "ok " << r.name << '\n';
        } else {
            os << "FAIL " << r.name << ": " << r.detail << '\n';
            all = false;
        }
    }
    os << (all ? "selftest passed" : "selftest FAILED") << " (" << results.size()
       << " checks)\n";
    return all;
}

}
