#include "qwlab/field.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "qwlab/rng.hpp"

namespace qwlab {

namespace {

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::string fmt17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

SpinorField::SpinorField(WalkParams p, std::size_t n) : params(p), v(n, spinor{cd(0), cd(0)}) {
    if (!power_of_two(n) || n < 2)
        throw ParameterError("ring size must be a power of two >= 2, got " + std::to_string(n));
}

bool SpinorField::finite() const {
    for (const auto& s : v)
        for (const auto& c : s)
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

void SpinorField::require_finite() const {
    if (!finite()) throw InvalidFieldError("field contains NaN/Inf entries");
}

SpinorField make_state(StateKind kind, const WalkParams& p, std::size_t n,
                       const StateOptions& opt) {
    SpinorField u(p, n);
    const long long half = (long long)n / 2;
    switch (kind) {
    case StateKind::impulse: {
        if (opt.site < -half || opt.site >= half)
            throw ParameterError("impulse site outside the ring");
        u.at_site(opt.site) = {cd(1.0), cd(0.0)};
        break;
    }
    case StateKind::gaussian: {
        if (!(opt.width > 0.0))
            throw ParameterError("gaussian width must be positive");
        const double trunc = opt.truncate > 0.0 ? opt.truncate : 16.0 * opt.width;
        for (long long j = -half; j < half; ++j) {
            double x = double(j) * p.delta;
            if (std::fabs(x) >= trunc) continue; // exact support edge
            double env = std::exp(-x * x / (2.0 * opt.width * opt.width));
            cd phase(std::cos(opt.carrier * x), std::sin(opt.carrier * x));
            u.at_site(j) = {env * phase, cd(0.0)};
        }
        break;
    }
    case StateKind::random: {
        Rng rng(opt.seed);
        for (std::size_t i = 0; i < n; ++i) {
            double a = rng.next_double(), b = rng.next_double();
            double c = rng.next_double(), d = rng.next_double();
            u.v[i] = {cd(a, b), cd(c, d)};
        }
        break;
    }
    }
    return u;
}

double support_radius(const SpinorField& u, double tol) {
    double r = 0.0;
    for (std::size_t i = 0; i < u.sites(); ++i) {
        const auto& s = u.v[i];
        double a = std::sqrt(std::norm(s[0]) + std::norm(s[1]));
        if (a > tol) {
            double x = std::fabs(double(u.site_of(i)) * u.delta());
            if (x > r) r = x;
        }
    }
    return r;
}

bool wrap_guard_ok(const SpinorField& u, double t) {
    return support_radius(u, 0.0) + t < double(u.sites()) * u.delta() / 2.0;
}

void write_field(std::ostream& os, const SpinorField& u) {
    os << "# delta=" << fmt17(u.params.delta) << " N=" << u.sites()
       << " mass=" << fmt17(u.params.mass) << "\n";
    const long long half = (long long)u.sites() / 2;
    for (long long j = -half; j < half; ++j) {
        const auto& s = u.at_site(j);
        os << j << ' ' << fmt17(s[0].real()) << ' ' << fmt17(s[0].imag()) << ' '
           << fmt17(s[1].real()) << ' ' << fmt17(s[1].imag()) << "\n";
    }
}

SpinorField read_field(std::istream& is) {
    std::string line;
    double delta = 0.0, mass = 0.0;
    long long n = 0;
    bool have_header = false;
    SpinorField u;
    long long rows = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (std::sscanf(line.c_str(), "# delta=%lf N=%lld mass=%lf", &delta, &n, &mass) == 3) {
                u = SpinorField(WalkParams(delta, mass), (std::size_t)n);
                have_header = true;
            }
            continue;
        }
        if (!have_header) throw InvalidFieldError("field file missing header line");
        long long j;
        double a, b, c, d;
        if (std::sscanf(line.c_str(), "%lld %lf %lf %lf %lf", &j, &a, &b, &c, &d) != 5)
            throw InvalidFieldError("malformed field row: " + line);
        u.at_site(j) = {cd(a, b), cd(c, d)};
        ++rows;
    }
    if (!have_header) throw InvalidFieldError("field file missing header line");
    if (rows != n) throw InvalidFieldError("field file row count does not match N");
    u.require_finite();
    return u;
}

void write_field_file(const std::string& path, const SpinorField& u) {
    std::ofstream os(path);
    if (!os) throw Error("cannot open for writing: " + path);
    write_field(os, u);
}

SpinorField read_field_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open for reading: " + path);
    return read_field(is);
}

}
