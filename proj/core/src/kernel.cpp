#include "qwlab/kernel.hpp"

#include <cmath>
#include <vector>

#include "qwlab/multipliers.hpp"
#include "qwlab/oracles.hpp"

namespace qwlab {

namespace {

// Shared node loop: accumulates (1/(M delta)) sum_i e^{i(s p t + x xi)} Q_s psi_lam
// over the M refined frequencies. Periodic trapezoid = equal weights.
void accumulate_kernel(const WalkParams& p, double lambda, double t, int refine,
                       std::size_t n, const std::vector<double>& xs,
                       std::vector<mat2>& plus_out, std::vector<mat2>& minus_out) {
    const std::size_t m = n * (std::size_t)refine;
    const double pi = FrequencyGrid::pi();
    const double dxi = 2.0 * pi / (double(m) * p.delta);
    plus_out.assign(xs.size(), {cd(0), cd(0), cd(0), cd(0)});
    minus_out.assign(xs.size(), {cd(0), cd(0), cd(0), cd(0)});
    for (std::size_t i = 0; i < m; ++i) {
        long long k = (long long)i < (long long)m / 2 ? (long long)i : (long long)i - (long long)m;
        const double xi = dxi * double(k);
        const double ps = bump_psi(xi / lambda);
        if (ps == 0.0) continue;
        mat2 qp, qm;
        symbol_projectors(xi, p, qp, qm);
        const double pv = dispersion(xi, p);
        for (std::size_t xi_idx = 0; xi_idx < xs.size(); ++xi_idx) {
            const double x = xs[xi_idx];
            const double base = x * xi;
            const cd eplus(std::cos(pv * t + base), std::sin(pv * t + base));
            const cd eminus(std::cos(-pv * t + base), std::sin(-pv * t + base));
            for (int e = 0; e < 4; ++e) {
                plus_out[xi_idx][e] += ps * eplus * qp[e];
                minus_out[xi_idx][e] += ps * eminus * qm[e];
            }
        }
    }
    const double w = 1.0 / (double(m) * p.delta); // = dxi / (2 pi)
    for (auto& q : plus_out)
        for (auto& e : q) e *= w;
    for (auto& q : minus_out)
        for (auto& e : q) e *= w;
}

} // namespace

mat2 kernel_quadrature(const WalkParams& p, double lambda, int s, double t, double x,
                       std::size_t n, int refine) {
    if (s != 1 && s != -1) throw ParameterError("kernel sign must be +-1");
    if (!(lambda > 0.0) || lambda >= 2.0 * FrequencyGrid::pi() / p.delta)
        throw ParameterError("lambda must lie in (0, 2pi/delta)");
    std::vector<mat2> plus, minus;
    accumulate_kernel(p, lambda, t, refine, n, {x}, plus, minus);
    return s > 0 ? plus[0] : minus[0];
}

SpinorField kernel_convolve(const SpinorField& u, double lambda, double t, int refine) {
    const std::size_t n = u.sites();
    const WalkParams& p = u.params;
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) {
        long long j = (long long)i < (long long)n / 2 ? (long long)i : (long long)i - (long long)n;
        xs[i] = double(j) * p.delta;
    }
    std::vector<mat2> plus, minus;
    accumulate_kernel(p, lambda, t, refine, n, xs, plus, minus);
    std::vector<mat2> total(n);
    for (std::size_t i = 0; i < n; ++i)
        for (int e = 0; e < 4; ++e) total[i][e] = plus[i][e] + minus[i][e];
    return oracle::convolve_direct(u, total);
}

}
