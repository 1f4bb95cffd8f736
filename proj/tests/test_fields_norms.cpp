#include "doctest.h"

#include <cmath>
#include <sstream>

#include "qwlab/field.hpp"
#include "qwlab/norms.hpp"

using namespace qwlab;

namespace {

SpinorField unit_site(double delta, std::size_t n, long long j) {
    SpinorField u(WalkParams(delta, 1.0), n);
    u.at_site(j) = {cd(1.0), cd(0.0)};
    return u;
}

} // namespace

TEST_CASE("field_norm: hand values on single-site fields") {
    // delta = 1, one unit entry: every l^p norm is 1.
    SpinorField u = unit_site(1.0, 16, 0);
    CHECK(field_norm(u, Exponent::integer(1)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(field_norm(u, Exponent::integer(2)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(field_norm(u, Exponent::inf()) == doctest::Approx(1.0).epsilon(1e-15));

    // delta = 1/2 scales the counting measure but not the sup.
    SpinorField v = unit_site(0.5, 16, 3);
    CHECK(field_norm(v, Exponent::integer(1)) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(field_norm(v, Exponent::integer(2)) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(field_norm(v, Exponent::inf()) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("field_norm: two unit sites, l2 gives sqrt(2)") {
    SpinorField u = unit_site(1.0, 16, 0);
    u.at_site(5) = {cd(1.0), cd(0.0)};
    CHECK(field_norm(u, Exponent::integer(2)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("field_norm: homogeneity and triangle inequality") {
    StateOptions opt;
    opt.seed = 11;
    SpinorField u = make_state(StateKind::random, WalkParams(0.25, 1.0), 64, opt);
    opt.seed = 12;
    SpinorField w = make_state(StateKind::random, WalkParams(0.25, 1.0), 64, opt);

    for (Exponent p : {Exponent::integer(1), Exponent::integer(2),
                       Exponent(7, 2), Exponent::inf()}) {
        double nu = field_norm(u, p);
        SpinorField cu = u;
        for (auto& s : cu.v) { s[0] *= cd(0.0, -3.0); s[1] *= cd(0.0, -3.0); }
        CHECK(field_norm(cu, p) == doctest::Approx(3.0 * nu).epsilon(1e-13));

        SpinorField sum = u;
        for (std::size_t i = 0; i < sum.v.size(); ++i) {
            sum.v[i][0] += w.v[i][0];
            sum.v[i][1] += w.v[i][1];
        }
        CHECK(field_norm(sum, p) <= nu + field_norm(w, p) + 1e-12);
    }
}

TEST_CASE("field_norm: embedding l^p1 -> l^p2 with the delta factor") {
    // ||u||_{p2} <= delta^{1/p2 - 1/p1} ||u||_{p1} for p2 >= p1.
    for (double delta : {1.0, 0.25, 0.0625}) {
        StateOptions opt;
        opt.seed = 5;
        SpinorField u = make_state(StateKind::random, WalkParams(delta, 1.0), 128, opt);
        const Exponent ladder[] = {Exponent::integer(1), Exponent::integer(2),
                                   Exponent::integer(6), Exponent::inf()};
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = a; b < 4; ++b) {
                double lhs = field_norm(u, ladder[b]);
                double bound = std::pow(delta, ladder[b].inv() - ladder[a].inv()) *
                               field_norm(u, ladder[a]);
                CHECK(lhs <= bound * (1.0 + 1e-12));
            }
    }
}

TEST_CASE("mixed_norm: hand values") {
    WalkParams p1(1.0, 1.0);

    SUBCASE("single slice, (2,2), delta = 1") {
        SpaceTimeField f;
        f.params = p1;
        f.times = {0.0};
        f.slices = {unit_site(1.0, 8, 0)};
        CHECK(mixed_norm(f, {Exponent::integer(2), Exponent::integer(2)}) ==
              doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("single slice, (1,1), delta = 1/2: both sums contribute 1/2") {
        SpaceTimeField f;
        f.params = WalkParams(0.5, 1.0);
        f.times = {0.0};
        f.slices = {unit_site(0.5, 8, 0)};
        CHECK(mixed_norm(f, {Exponent::integer(1), Exponent::integer(1)}) ==
              doctest::Approx(0.25).epsilon(1e-15));
    }
    SUBCASE("two slices, (inf,2): sup over time of the slice norms") {
        SpaceTimeField f;
        f.params = p1;
        f.times = {0.0, 1.0};
        f.slices = {unit_site(1.0, 8, 0), unit_site(1.0, 8, 2)};
        CHECK(mixed_norm(f, {Exponent::inf(), Exponent::integer(2)}) ==
              doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("mixed_norm: single slice equals delta^{1/p} * field_norm") {
    StateOptions opt;
    opt.seed = 9;
    SpinorField u = make_state(StateKind::random, WalkParams(0.125, 1.0), 64, opt);
    SpaceTimeField f;
    f.params = u.params;
    f.times = {0.0};
    f.slices = {u};
    for (Exponent p : {Exponent::integer(1), Exponent::integer(2), Exponent::integer(6)})
        for (Exponent q : {Exponent::integer(2), Exponent::inf()}) {
            double expect = std::pow(0.125, p.inv()) * field_norm(u, q);
            CHECK(mixed_norm(f, {p, q}) == doctest::Approx(expect).epsilon(1e-13));
        }
}

TEST_CASE("MixedNormAccum matches batch mixed_norm") {
    WalkParams p(0.5, 1.0);
    SpaceTimeField f;
    f.params = p;
    for (int k = 0; k < 7; ++k) {
        StateOptions opt;
        opt.seed = 100 + (unsigned)k;
        f.times.push_back(k * p.delta);
        f.slices.push_back(make_state(StateKind::random, p, 32, opt));
    }
    for (Exponent pp : {Exponent::integer(2), Exponent::integer(6), Exponent::inf()}) {
        MixedNormAccum acc(pp, p.delta);
        for (const auto& s : f.slices) acc.add_slice(s, Exponent::integer(2));
        CHECK(acc.value() ==
              doctest::Approx(mixed_norm(f, {pp, Exponent::integer(2)})).epsilon(1e-13));
    }
    MixedNormAccum empty(Exponent::integer(2), p.delta);
    CHECK_THROWS_AS(empty.value(), EmptyWindowError);
}

TEST_CASE("make_state: impulse") {
    SpinorField u = make_state(StateKind::impulse, WalkParams(0.5, 1.0), 32);
    CHECK(u.at_site(0)[0] == cd(1.0));
    CHECK(u.at_site(0)[1] == cd(0.0));
    CHECK(support_radius(u, 0.0) == 0.0);

    StateOptions opt;
    opt.site = -3;
    SpinorField v = make_state(StateKind::impulse, WalkParams(0.5, 1.0), 32, opt);
    CHECK(v.at_site(-3)[0] == cd(1.0));
    CHECK(support_radius(v, 0.0) == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("make_state: gaussian truncation is exact") {
    StateOptions opt;
    opt.width = 2.0;
    opt.truncate = 8.0;
    SpinorField u = make_state(StateKind::gaussian, WalkParams(1.0, 1.0), 64, opt);
    CHECK(support_radius(u, 0.0) < 8.0);
    for (long long j = -32; j < 32; ++j) {
        if (std::abs((double)j) >= 8.0) {
            CHECK(u.at_site(j)[0] == cd(0.0));
            CHECK(u.at_site(j)[1] == cd(0.0));
        }
    }
    CHECK(std::abs(u.at_site(0)[0]) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("make_state: random fields are seed-reproducible") {
    WalkParams p(1.0, 1.0);
    StateOptions a, b, c;
    a.seed = 7;
    b.seed = 7;
    c.seed = 8;
    SpinorField ua = make_state(StateKind::random, p, 64, a);
    SpinorField ub = make_state(StateKind::random, p, 64, b);
    SpinorField uc = make_state(StateKind::random, p, 64, c);
    bool same = true, diff = false;
    for (std::size_t i = 0; i < 64; ++i) {
        same = same && ua.v[i] == ub.v[i];
        diff = diff || ua.v[i] != uc.v[i];
    }
    CHECK(same);
    CHECK(diff);
}

TEST_CASE("support_radius: tolerance semantics") {
    SpinorField u = unit_site(1.0, 32, 4);
    u.at_site(10) = {cd(1e-14), cd(0.0)};
    CHECK(support_radius(u, 0.0) == doctest::Approx(10.0));
    CHECK(support_radius(u, 1e-12) == doctest::Approx(4.0));
    SpinorField z(WalkParams(1.0, 1.0), 32);
    CHECK(support_radius(z, 0.0) == 0.0);
}

TEST_CASE("wrap_guard_ok") {
    // N = 64, delta = 1: guard is radius + t < 32.
    SpinorField u = unit_site(1.0, 64, 4);
    CHECK(wrap_guard_ok(u, 27.0));
    CHECK_FALSE(wrap_guard_ok(u, 28.0));
}

TEST_CASE("serialization round trip is exact") {
    StateOptions opt;
    opt.seed = 3;
    SpinorField u = make_state(StateKind::random, WalkParams(0.25, 0.75), 64, opt);
    std::ostringstream os;
    write_field(os, u);
    std::istringstream is(os.str());
    SpinorField v = read_field(is);
    REQUIRE(v.sites() == u.sites());
    CHECK(v.params.delta == u.params.delta);
    CHECK(v.params.mass == u.params.mass);
    for (std::size_t i = 0; i < u.sites(); ++i) {
        CHECK(u.v[i][0] == v.v[i][0]);
        CHECK(u.v[i][1] == v.v[i][1]);
    }
}

TEST_CASE("read_field skips leading comment lines") {
    SpinorField u = unit_site(0.5, 8, 1);
    std::ostringstream os;
    os << "# some manifest line\n# another = thing\n";
    write_field(os, u);
    std::istringstream is(os.str());
    SpinorField v = read_field(is);
    CHECK(v.sites() == 8);
    CHECK(v.at_site(1)[0] == cd(1.0));
}

TEST_CASE("site indexing uses wrapped transform order") {
    SpinorField u(WalkParams(1.0, 1.0), 8);
    // Slots 0..3 are sites 0..3; slots 4..7 are sites -4..-1.
    CHECK(u.site_of(0) == 0);
    CHECK(u.site_of(3) == 3);
    CHECK(u.site_of(4) == -4);
    CHECK(u.site_of(7) == -1);
    CHECK(u.index_of(-1) == 7);
    CHECK(u.index_of(2) == 2);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(WalkParams(0.0, 1.0), ParameterError);
    CHECK_THROWS_AS(WalkParams(1.5, 1.0), ParameterError);
    CHECK_THROWS_AS(WalkParams(-0.5, 1.0), ParameterError);
    CHECK(WalkParams(1.0, 1.0).mass_window_ok());
    CHECK_FALSE(WalkParams(1.0, 0.0).mass_window_ok());
    CHECK_FALSE(WalkParams(1.0, 2.0).mass_window_ok()); // delta*m = 2 > pi/2
}
