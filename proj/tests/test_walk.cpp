#include "doctest.h"

#include <cmath>

#include "qwlab/field.hpp"
#include "qwlab/norms.hpp"
#include "qwlab/walk.hpp"

using namespace qwlab;

namespace {

double max_site_diff(const SpinorField& a, const SpinorField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.sites(); ++i) {
        m = std::max(m, std::abs(a.v[i][0] - b.v[i][0]));
        m = std::max(m, std::abs(a.v[i][1] - b.v[i][1]));
    }
    return m;
}

} // namespace

TEST_CASE("coin: massless coin is the identity") {
    StateOptions opt;
    opt.seed = 2;
    SpinorField u = make_state(StateKind::random, WalkParams(1.0, 0.0), 32, opt);
    CHECK(max_site_diff(coin_apply(u), u) == 0.0);
}

TEST_CASE("coin: quarter-turn and generic angle") {
    // delta*m = pi/2 sends (1,0) to (0,-i).
    SpinorField u(WalkParams(1.0, std::acos(-1.0) / 2), 8);
    u.at_site(0) = {cd(1.0), cd(0.0)};
    SpinorField cu = coin_apply(u);
    CHECK(std::abs(cu.at_site(0)[0]) < 1e-15);
    CHECK(std::abs(cu.at_site(0)[1] - cd(0.0, -1.0)) < 1e-15);

    SpinorField v(WalkParams(1.0, 1.0), 8);
    v.at_site(0) = {cd(1.0), cd(0.0)};
    SpinorField cv = coin_apply(v);
    CHECK(std::abs(cv.at_site(0)[0] - cd(std::cos(1.0))) < 1e-15);
    CHECK(std::abs(cv.at_site(0)[1] - cd(0.0, -std::sin(1.0))) < 1e-15);
}

TEST_CASE("shift: first component right, second component left") {
    SpinorField u(WalkParams(1.0, 1.0), 8);
    u.at_site(2) = {cd(3.0), cd(5.0)};
    SpinorField su = shift_apply(u);
    // (Su)(x) = (u1(x - delta), u2(x + delta)).
    CHECK(su.at_site(3)[0] == cd(3.0));
    CHECK(su.at_site(1)[1] == cd(5.0));
    CHECK(su.at_site(2)[0] == cd(0.0));
    CHECK(su.at_site(2)[1] == cd(0.0));
}

TEST_CASE("step: massless walk is pure ballistic transport") {
    SpinorField u(WalkParams(0.5, 0.0), 16);
    u.at_site(0) = {cd(1.0), cd(2.0)};
    SpinorField w = u;
    for (int k = 0; k < 5; ++k) w = step(w);
    CHECK(w.at_site(5)[0] == cd(1.0));
    CHECK(w.at_site(-5)[1] == cd(2.0));
    CHECK(field_norm(w, Exponent::integer(1)) ==
          doctest::Approx(1.5).epsilon(1e-15)); // (1 + 2) * delta
}

TEST_CASE("step: unitary over a long run") {
    StateOptions opt;
    opt.seed = 21;
    SpinorField u = make_state(StateKind::random, WalkParams(1.0, 1.0), 256, opt);
    double n0 = field_norm(u, Exponent::integer(2));
    for (int k = 0; k < 1000; ++k) u = step(u);
    CHECK(std::abs(field_norm(u, Exponent::integer(2)) - n0) <= 1e-12 * n0);
}

TEST_CASE("step: strict light cone, one site per step") {
    WalkParams p(1.0, 1.0);
    SpinorField u = make_state(StateKind::impulse, p, 256);
    for (int k = 1; k <= 60; ++k) {
        u = step(u);
        CHECK(support_radius(u, 0.0) == (double)k); // small integers, exact
        for (long long j = -128; j < 128; ++j)
            if (std::llabs(j) > k) {
                REQUIRE(u.at_site(j)[0] == cd(0.0));
                REQUIRE(u.at_site(j)[1] == cd(0.0));
            }
    }
}

TEST_CASE("evolve: group property") {
    WalkParams p(0.25, 1.0);
    StateOptions opt;
    opt.seed = 33;
    SpinorField u = make_state(StateKind::random, p, 128, opt);

    SpinorField by_steps = u;
    for (int k = 0; k < 8; ++k) by_steps = step(by_steps);
    Evolved e = evolve(u, 8 * p.delta);
    CHECK(max_site_diff(e.field, by_steps) == 0.0);

    Evolved two = evolve(evolve(u, 3 * p.delta).field, 5 * p.delta);
    CHECK(max_site_diff(two.field, e.field) < 1e-14);

    Evolved zero = evolve(u, 0.0);
    CHECK(max_site_diff(zero.field, u) == 0.0);
}

TEST_CASE("evolve: translation covariance") {
    WalkParams p(0.5, 1.0);
    StateOptions opt;
    opt.seed = 4;
    SpinorField u = make_state(StateKind::random, p, 64, opt);

    auto translate = [](const SpinorField& f, long long jshift) {
        SpinorField g = f;
        long long n = (long long)f.sites();
        for (long long j = 0; j < n; ++j)
            g.v[f.index_of((j >= n / 2 ? j - n : j) + jshift)] =
                f.v[(std::size_t)j];
        return g;
    };

    SpinorField a = evolve(translate(u, 5), 12 * p.delta).field;
    SpinorField b = translate(evolve(u, 12 * p.delta).field, 5);
    CHECK(max_site_diff(a, b) < 1e-14);
}

TEST_CASE("evolve: time must be a nonnegative grid point") {
    SpinorField u = make_state(StateKind::impulse, WalkParams(0.5, 1.0), 32);
    CHECK_THROWS_AS(evolve(u, -0.5), TimeGridError);
    CHECK_THROWS_AS(evolve(u, 0.3), TimeGridError);
    CHECK_NOTHROW(evolve(u, 1.5));
}

TEST_CASE("evolve: wrap guard flag") {
    SpinorField u = make_state(StateKind::impulse, WalkParams(1.0, 1.0), 64);
    CHECK(evolve(u, 16.0).wrap_ok);
    CHECK_FALSE(evolve(u, 40.0).wrap_ok);
}

TEST_CASE("steps_of: grid arithmetic") {
    CHECK(steps_of(2.0, 0.25) == 8);
    CHECK(steps_of(0.0, 1.0) == 0);
    CHECK(steps_of(-2.0, 0.5, true) == -4);
    CHECK_THROWS_AS(steps_of(-2.0, 0.5), TimeGridError);
    CHECK_THROWS_AS(steps_of(0.7, 0.5), TimeGridError);
}
