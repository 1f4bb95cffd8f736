#include "qwlab/multipliers.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace qwlab {

namespace {

double smooth_g(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

// h(0)=0, h(1)=1, h(s)+h(1-s)=1; all derivatives vanish at the ends.
double smooth_h(double s) {
    double a = smooth_g(s), b = smooth_g(1.0 - s);
    return a / (a + b);
}

} // namespace

double bump_phi(double x) {
    x = std::fabs(x);
    if (x <= 1.0) return 1.0;
    if (x >= 2.0) return 0.0;
    return smooth_h(2.0 - x);
}

double bump_psi(double x) { return bump_phi(x) - bump_phi(2.0 * x); }

double bump_psi_tilde(double x) { return bump_phi(x / 2.0) - bump_phi(4.0 * x); }

double psi_lambda(double xi, double lambda, const WalkParams& p) {
    if (!(lambda > 0.0)) throw ParameterError("lambda must be positive");
    (void)p;
    return bump_psi(xi / lambda);
}

namespace {

enum class TableKind { psi, psi_tilde };

struct TableKey {
    std::size_t n;
    double delta;
    TableKind kind;
    double lambda;
    bool operator<(const TableKey& o) const {
        return std::tie(n, delta, kind, lambda) < std::tie(o.n, o.delta, o.kind, o.lambda);
    }
};

const MultiplierTable& cached_table(const FrequencyGrid& g, TableKind kind, double lambda) {
    static std::mutex mu;
    static std::map<TableKey, std::unique_ptr<MultiplierTable>> cache;
    TableKey key{g.n, g.params.delta, kind, lambda};
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[key];
    if (!slot) {
        auto t = std::make_unique<MultiplierTable>(g.n);
        for (std::size_t i = 0; i < g.n; ++i) {
            double x = g.xi(i) / lambda;
            (*t)[i] = kind == TableKind::psi ? bump_psi(x) : bump_psi_tilde(x);
        }
        slot = std::move(t);
    }
    return *slot;
}

} // namespace

const MultiplierTable& psi_lambda_table(const FrequencyGrid& g, double lambda) {
    if (!(lambda > 0.0)) throw ParameterError("lambda must be positive");
    return cached_table(g, TableKind::psi, lambda);
}

const MultiplierTable& psi_tilde_lambda_table(const FrequencyGrid& g, double lambda) {
    if (!(lambda > 0.0)) throw ParameterError("lambda must be positive");
    return cached_table(g, TableKind::psi_tilde, lambda);
}

SpinorField apply_multiplier(const SpinorField& u, const MultiplierTable& table) {
    if (table.size() != u.sites())
        throw GridMismatchError("multiplier table size " + std::to_string(table.size()) +
                                " does not match ring size " + std::to_string(u.sites()));
    FrequencyField v = forward_transform(u);
    for (std::size_t i = 0; i < v.v.size(); ++i) {
        v.v[i][0] *= table[i];
        v.v[i][1] *= table[i];
    }
    return inverse_transform(v);
}

SpinorField apply_multiplier(const SpinorField& u, const std::function<cd(double)>& symbol) {
    FrequencyField v = forward_transform(u);
    for (std::size_t i = 0; i < v.v.size(); ++i) {
        cd m = symbol(v.grid.xi(i));
        v.v[i][0] *= m;
        v.v[i][1] *= m;
    }
    return inverse_transform(v);
}

SpinorField littlewood_paley(const SpinorField& u, double lambda) {
    if (!(lambda > 0.0)) throw ParameterError("lambda must be positive");
    if (lambda >= 2.0 * FrequencyGrid::pi() / u.params.delta)
        return SpinorField(u.params, u.sites()); // support past the zone: exactly zero
    FrequencyGrid g(u.params, u.sites());
    return apply_multiplier(u, psi_lambda_table(g, lambda));
}

SpinorField littlewood_paley_tilde(const SpinorField& u, double lambda) {
    if (!(lambda > 0.0)) throw ParameterError("lambda must be positive");
    if (lambda >= 4.0 * FrequencyGrid::pi() / u.params.delta)
        return SpinorField(u.params, u.sites());
    FrequencyGrid g(u.params, u.sites());
    return apply_multiplier(u, psi_tilde_lambda_table(g, lambda));
}

SpinorField fractional_weight(const SpinorField& u, double a, double b) {
    FrequencyField v = forward_transform(u);
    if (a < 0.0) {
        // |xi|^a blows up at the zero mode: only mean-zero input is in the domain
        double zm = std::sqrt(std::norm(v.v[0][0]) + std::norm(v.v[0][1]));
        double total = 0.0;
        for (const auto& s : v.v) total += std::norm(s[0]) + std::norm(s[1]);
        if (zm > 1e-13 * std::sqrt(total))
            throw DomainError("negative |D| power applied to a non-mean-zero field");
    }
    for (std::size_t i = 0; i < v.v.size(); ++i) {
        const double xi = v.grid.xi(i);
        double w;
        if (xi == 0.0)
            w = a == 0.0 ? std::pow(1.0, b / 2.0) : 0.0; // empty-product convention at a=0
        else
            w = std::pow(std::fabs(xi), a) * std::pow(1.0 + xi * xi, b / 2.0);
        v.v[i][0] *= w;
        v.v[i][1] *= w;
    }
    return inverse_transform(v);
}

std::vector<double> dyadic_lambdas(const FrequencyGrid& g) {
    const double pi = FrequencyGrid::pi();
    const double lo = g.delta_xi();            // smallest nonzero |xi|
    const double hi = pi / g.params.delta;     // zone edge
    int jmin = (int)std::floor(std::log2(lo)); // 2^jmin <= lo
    int jmax = (int)std::ceil(std::log2(hi));  // 2^jmax >= hi
    std::vector<double> out;
    for (int j = jmin; j <= jmax; ++j) out.push_back(std::ldexp(1.0, j));
    return out;
}

}
