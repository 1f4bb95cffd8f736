#include "qwlab/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>

#include "qwlab/multipliers.hpp"
#include "qwlab/spectral.hpp"

namespace qwlab {

namespace {

std::string fmt17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void check_lambda(double lambda, double delta) {
    if (!(lambda > 0.0) || lambda >= 2.0 * FrequencyGrid::pi() / delta)
        throw ParameterError("lambda must lie in (0, 2pi/delta)");
}

double angle_bracket(double x) { return std::sqrt(1.0 + x * x); }

// Geometric step ladder round(n_min * 2^{k/per_octave}), deduplicated, <= n_max.
std::vector<long long> step_ladder(long long n_min, long long n_max, int per_octave) {
    std::set<long long> s;
    for (int k = 0;; ++k) {
        double v = double(n_min) * std::exp2(double(k) / double(per_octave));
        long long n = (long long)std::llround(v);
        if (n > n_max) break;
        s.insert(n);
    }
    s.insert(n_max);
    return {s.begin(), s.end()};
}

} // namespace

void write_ratio_csv_row(std::ostream& os, const RatioRecord& r) {
    os << fmt17(r.delta) << ',' << fmt17(r.mass) << ',';
    if (r.lambda) os << fmt17(*r.lambda);
    os << ',' << fmt17(r.t_or_T) << ',';
    if (r.pair) os << r.pair->p.str() << ',' << r.pair->q.str() << ',';
    else os << ",,";
    if (r.pair_tilde) os << r.pair_tilde->p.str() << ',' << r.pair_tilde->q.str() << ',';
    else os << ",,";
    os << fmt17(r.lhs) << ',' << fmt17(r.rhs) << ',' << fmt17(r.ratio) << ','
       << (r.wrap_ok ? 1 : 0) << ',';
    if (r.seed) os << *r.seed;
    os << '\n';
}

void write_ratio_json_line(std::ostream& os, const RatioRecord& r) {
    os << "{\"delta\":" << fmt17(r.delta) << ",\"mass\":" << fmt17(r.mass);
    if (r.lambda) os << ",\"lambda\":" << fmt17(*r.lambda);
    os << ",\"t_or_T\":" << fmt17(r.t_or_T);
    if (r.pair)
        os << ",\"p\":\"" << r.pair->p.str() << "\",\"q\":\"" << r.pair->q.str() << "\"";
    if (r.pair_tilde)
        os << ",\"ptilde\":\"" << r.pair_tilde->p.str() << "\",\"qtilde\":\""
           << r.pair_tilde->q.str() << "\"";
    os << ",\"lhs\":" << fmt17(r.lhs) << ",\"rhs\":" << fmt17(r.rhs)
       << ",\"ratio\":" << fmt17(r.ratio) << ",\"wrap_ok\":" << (r.wrap_ok ? "true" : "false");
    if (r.seed) os << ",\"seed\":" << *r.seed;
    os << "}\n";
}

RatioRecord dispersive_ratio(const SpinorField& u, double lambda, double t) {
    const WalkParams& p = u.params;
    p.require_mass_window();
    check_lambda(lambda, p.delta);
    if (steps_of(t, p.delta) < 1)
        throw DomainError("dispersive ratio needs t >= delta (no decay factor at t=0)");
    const double u1 = field_norm(u, Exponent::integer(1));
    if (u1 <= 0.0) throw DomainError("dispersive ratio needs a nonzero input");

    // the guard is judged on the input: the band projection smears support over
    // the whole ring, but its tail is below roundoff outside the light cone
    const bool wrap = wrap_guard_ok(u, t);
    SpinorField proj = littlewood_paley(u, lambda);
    Evolved ev = evolve(proj, t);
    RatioRecord r;
    r.delta = p.delta;
    r.mass = p.mass;
    r.lambda = lambda;
    r.t_or_T = t;
    r.lhs = field_norm(ev.field, Exponent::inf());
    r.rhs = std::pow(lambda, 1.0 / 3.0) * angle_bracket(lambda) * std::pow(t, -1.0 / 3.0) * u1;
    r.ratio = r.lhs / r.rhs;
    r.wrap_ok = wrap;
    return r;
}

std::vector<RatioRecord> decay_ladder(const SpinorField& u, double lambda, double t_min,
                                      double t_max, int per_octave) {
    const WalkParams& p = u.params;
    p.require_mass_window();
    check_lambda(lambda, p.delta);
    const long long n_min = steps_of(t_min, p.delta);
    const long long n_max = steps_of(t_max, p.delta);
    if (n_min < 1 || n_max < n_min)
        throw DomainError("decay ladder needs delta <= t_min <= t_max");
    const double u1 = field_norm(u, Exponent::integer(1));
    if (u1 <= 0.0) throw DomainError("decay ladder needs a nonzero input");

    const bool wrap = wrap_guard_ok(u, t_max);
    std::vector<long long> rungs = step_ladder(n_min, n_max, per_octave);

    // one pass: the group property turns the whole ladder into a single evolution
    SpinorField cur = littlewood_paley(u, lambda);
    long long done = 0;
    std::vector<RatioRecord> out;
    out.reserve(rungs.size());
    for (long long n : rungs) {
        for (; done < n; ++done) cur = step(cur);
        const double t = double(n) * p.delta;
        RatioRecord r;
        r.delta = p.delta;
        r.mass = p.mass;
        r.lambda = lambda;
        r.t_or_T = t;
        r.lhs = field_norm(cur, Exponent::inf());
        r.rhs = std::pow(lambda, 1.0 / 3.0) * angle_bracket(lambda) * std::pow(t, -1.0 / 3.0) * u1;
        r.ratio = r.lhs / r.rhs;
        r.wrap_ok = wrap;
        out.push_back(r);
    }
    return out;
}

SlopeFit slope_fit_xy(const std::vector<double>& logt, const std::vector<double>& logy) {
    if (logt.size() != logy.size() || logt.size() < 3)
        throw FitError("slope fit needs at least 3 points");
    const double n = double(logt.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < logt.size(); ++i) {
        sx += logt[i];
        sy += logy[i];
        sxx += logt[i] * logt[i];
        sxy += logt[i] * logy[i];
    }
    const double det = n * sxx - sx * sx;
    if (det == 0.0) throw FitError("slope fit is degenerate (identical abscissae)");
    SlopeFit f;
    f.slope = (n * sxy - sx * sy) / det;
    f.intercept = (sy - f.slope * sx) / n;
    double rss = 0.0;
    for (std::size_t i = 0; i < logt.size(); ++i) {
        double r = logy[i] - (f.intercept + f.slope * logt[i]);
        rss += r * r;
    }
    f.residual = std::sqrt(rss / n);
    return f;
}

SlopeFit decay_slope_fit(const std::vector<RatioRecord>& records) {
    std::vector<double> lt, ly;
    lt.reserve(records.size());
    ly.reserve(records.size());
    for (const auto& r : records) {
        lt.push_back(std::log(r.t_or_T));
        ly.push_back(std::log(r.lhs));
    }
    return slope_fit_xy(lt, ly);
}

SpinorField duhamel(const SpaceTimeField& f, double t, bool weighted) {
    const double delta = f.params.delta;
    const long long nsteps = steps_of(t, delta);
    if (f.slices.empty()) throw DomainError("duhamel needs f on all of [0, t]");
    // slices must cover s = 0, delta, ..., t in order
    for (long long k = 0; k <= nsteps; ++k) {
        if ((std::size_t)k >= f.times.size() ||
            std::fabs(f.times[k] - double(k) * delta) > 1e-9 * delta)
            throw DomainError("duhamel needs slices at every s in [0, t] on the time grid");
    }
    // D(0) = f(0); D(s+delta) = U D(s) + f(s+delta)
    SpinorField d = f.slices[0];
    for (long long k = 1; k <= nsteps; ++k) {
        d = step(d);
        const auto& add = f.slices[k].v;
        for (std::size_t i = 0; i < d.v.size(); ++i) {
            d.v[i][0] += add[i][0];
            d.v[i][1] += add[i][1];
        }
    }
    if (weighted)
        for (auto& s : d.v) {
            s[0] *= delta;
            s[1] *= delta;
        }
    return d;
}

RatioRecord homogeneous_ratio(const SpinorField& u, const AdmissiblePair& pair, double T) {
    require_admissible(pair);
    const WalkParams& p = u.params;
    p.require_mass_window();
    const long long nsteps = steps_of(T, p.delta);

    MixedNormAccum acc(pair.p, p.delta);
    SpinorField cur = u;
    acc.add_slice(cur, pair.q);
    for (long long k = 1; k <= nsteps; ++k) {
        cur = step(cur);
        acc.add_slice(cur, pair.q);
    }

    const double a = pair.p.inv();       // 1/p
    const double b = 3.0 * pair.p.inv(); // 3/p
    const double rhs = field_norm(fractional_weight(u, a, b), Exponent::integer(2));
    if (rhs <= 0.0) throw DomainError("homogeneous ratio needs a nonzero weighted input");

    RatioRecord r;
    r.delta = p.delta;
    r.mass = p.mass;
    r.t_or_T = T;
    r.pair = pair;
    r.lhs = acc.value();
    r.rhs = rhs;
    r.ratio = r.lhs / r.rhs;
    r.wrap_ok = wrap_guard_ok(u, T);
    return r;
}

RatioRecord inhomogeneous_ratio(const SpaceTimeField& f, const AdmissiblePair& pair,
                                const AdmissiblePair& pair_tilde, double T, bool weighted) {
    require_admissible(pair);
    require_admissible(pair_tilde);
    const WalkParams& p = f.params;
    p.require_mass_window();
    const long long nsteps = steps_of(T, p.delta);
    for (long long k = 0; k <= nsteps; ++k)
        if ((std::size_t)k >= f.slices.size())
            throw DomainError("inhomogeneous ratio needs f on all of [0, T]");

    // lhs: stream the Duhamel recursion, one mixed-norm slice per time
    MixedNormAccum lhs_acc(pair.p, p.delta);
    SpinorField d = f.slices[0];
    if (weighted) {
        SpinorField scaled = d;
        for (auto& s : scaled.v) {
            s[0] *= p.delta;
            s[1] *= p.delta;
        }
        lhs_acc.add_slice(scaled, pair.q);
    } else {
        lhs_acc.add_slice(d, pair.q);
    }
    for (long long k = 1; k <= nsteps; ++k) {
        d = step(d);
        const auto& add = f.slices[k].v;
        for (std::size_t i = 0; i < d.v.size(); ++i) {
            d.v[i][0] += add[i][0];
            d.v[i][1] += add[i][1];
        }
        if (weighted) {
            SpinorField scaled = d;
            for (auto& s : scaled.v) {
                s[0] *= p.delta;
                s[1] *= p.delta;
            }
            lhs_acc.add_slice(scaled, pair.q);
        } else {
            lhs_acc.add_slice(d, pair.q);
        }
    }

    // rhs: slice-wise weight |D|^{1/p + 1/pt} <D>^{3/p + 3/pt} in the conjugate pair
    const double a = pair.p.inv() + pair_tilde.p.inv();
    const double b = 3.0 * (pair.p.inv() + pair_tilde.p.inv());
    MixedNormAccum rhs_acc(pair_tilde.p.conjugate(), p.delta);
    const Exponent q_conj = pair_tilde.q.conjugate();
    for (long long k = 0; k <= nsteps; ++k)
        rhs_acc.add_slice(fractional_weight(f.slices[k], a, b), q_conj);

    RatioRecord r;
    r.delta = p.delta;
    r.mass = p.mass;
    r.t_or_T = T;
    r.pair = pair;
    r.pair_tilde = pair_tilde;
    r.lhs = lhs_acc.value();
    r.rhs = rhs_acc.value();
    if (r.rhs <= 0.0) throw DomainError("inhomogeneous ratio needs nonzero weighted data");
    r.ratio = r.lhs / r.rhs;
    r.wrap_ok = wrap_guard_ok(f.slices[0], T);
    return r;
}

double bernstein_ratio(const SpinorField& v, double lambda) {
    check_lambda(lambda, v.params.delta);
    const double num = field_norm(littlewood_paley_tilde(v, lambda), Exponent::inf());
    const double den = std::pow(lambda, 1.0 / 6.0) * field_norm(v, Exponent::integer(6));
    if (den <= 0.0) throw DomainError("Bernstein ratio needs a nonzero input");
    return num / den;
}

double interpolated_decay_sup(const SpinorField& u, double lambda, const Exponent& q,
                              double t_min, double t_max, int per_octave) {
    const WalkParams& p = u.params;
    p.require_mass_window();
    check_lambda(lambda, p.delta);
    const long long n_min = steps_of(t_min, p.delta);
    const long long n_max = steps_of(t_max, p.delta);
    if (n_min < 1) throw DomainError("interpolated decay needs t_min >= delta");

    std::vector<long long> rungs = step_ladder(n_min, n_max, per_octave);
    SpinorField cur = littlewood_paley(u, lambda);
    long long done = 0;
    double sup = 0.0;
    const double expo = 0.5 - q.inv();
    for (long long n : rungs) {
        for (; done < n; ++done) cur = step(cur);
        const double t = double(n) * p.delta;
        sup = std::max(sup, field_norm(cur, q) * std::pow(t, expo));
    }
    return sup;
}

}
