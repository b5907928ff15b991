#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fountain/core/bubble.hpp"
#include "fountain/core/constants.hpp"
#include "fountain/core/error.hpp"
#include "fountain/core/gauss_legendre.hpp"
#include "fountain/core/partition.hpp"
#include "fountain/core/tower_config.hpp"

using namespace fountain;

namespace {
constexpr double pi = std::numbers::pi;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("gauss-legendre rules integrate polynomials exactly") {
    for (int n : {1, 2, 4, 8, 16, 40}) {
        const auto& rule = gauss_legendre(n);
        const int degree = 2 * n - 1;
        const double got = gauss_integrate([&](double x) { return std::pow(x, degree - degree % 2); }, -1.0, 1.0, rule);
        const int e = degree - degree % 2;
        CHECK(got == doctest::Approx(2.0 / (e + 1)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
}

TEST_CASE("universal constants match closed forms") {
    const auto c = compute_constants();
    CHECK(rel(c.A, 8.0 * std::numbers::sqrt2 * pi * pi) < 1e-8);
    CHECK(rel(c.B, 32.0 * pi * pi / 3.0) < 1e-8);
    CHECK(rel(c.Gamma, 32.0 * pi * pi) < 1e-8);
    CHECK(rel(c.interaction_const, 128.0 * pi * pi) < 1e-12);
    CHECK(rel(c.A_exact, c.alpha4 / c.gamma4) < 1e-10);
    CHECK(rel(c.A_exact * c.A_exact * c.gamma4, c.Gamma_exact) < 1e-10);
    CHECK(c.gamma4 == doctest::Approx(1.0 / (4.0 * pi * pi)));
    CHECK(robin_ball_center(1.0) == doctest::Approx(0.0253302959105844));
    CHECK_THROWS_AS(robin_ball_center(0.0), PreconditionError);
}

TEST_CASE("bubble values") {
    CHECK(bubble_eval(Bubble{1.0}, 0.0) == doctest::Approx(2.0 * std::numbers::sqrt2));
    CHECK(bubble_eval(Bubble{1.0}, 1.0) == doctest::Approx(std::numbers::sqrt2));
    CHECK(bubble_eval(Bubble{0.1}, 1.0) == doctest::Approx(0.28004228957883070).epsilon(1e-14));
    CHECK(dbubble_eval(Bubble{1.0}, 1.0) == doctest::Approx(0.0));
    CHECK(dbubble_eval(Bubble{1.0}, 0.0) == doctest::Approx(-2.0 * std::numbers::sqrt2));
    CHECK_THROWS_AS(make_bubble(-1.0), PreconditionError);
    CHECK_THROWS_AS(bubble_eval(Bubble{1.0}, -0.5), PreconditionError);

    const Bubble b{0.3};
    for (int i = 0; i < 100; ++i) {
        const double r = std::pow(10.0, -4.0 + 6.0 * i / 99.0);
        CHECK(std::abs(b.delta_derivative(r)) <= b.value(r) / b.delta * (1.0 + 1e-14));
    }
}

TEST_CASE("projected bubble coefficients and traces") {
    const auto pu = project_bubble(Bubble{0.1}, 1e-3, 1.0);
    CHECK(rel(pu.c2, 2.80014288150015701e-5) < 1e-12);
    CHECK(rel(pu.c1, 0.280014288150015701) < 1e-12);
    CHECK(rel(pu.value(0.05), 22.3362021382935045) < 1e-12);
    const double peak = pu.bubble.value(0.0);
    CHECK(std::abs(pu.value(1e-3)) < 1e-12 * peak);
    CHECK(std::abs(pu.value(1.0)) < 1e-12 * peak);

    for (double eps : {1e-5, 1e-3, 1e-2}) {
        for (double delta : {1e-3, 0.05, 0.5}) {
            if (!(eps < delta)) continue;
            const auto p = project_bubble(Bubble{delta}, eps, 1.0);
            for (int i = 0; i < 200; ++i) {
                const double r = eps * std::pow(1.0 / eps, i / 199.0);
                CHECK(p.value(r) <= p.bubble.value(r));
                CHECK(p.value(r) >= -1e-12 * p.bubble.value(0.0));
            }
        }
    }
    const auto small = project_bubble(Bubble{0.1}, 1e-9, 1.0);
    CHECK(std::abs(small.c2) < 1e-16);
    CHECK(small.c1 == doctest::Approx(Bubble{0.1}.value(1.0)).epsilon(1e-12));
    CHECK_THROWS_AS(project_bubble(Bubble{0.1}, 1.0, 1.0), PreconditionError);
}

TEST_CASE("projected delta-derivative") {
    const Bubble b{0.1};
    const auto pp = project_dbubble(b, 1e-3, 1.0);
    CHECK(std::abs(pp.value(1e-3)) < 1e-12 * std::abs(b.delta_derivative(0.0)));
    CHECK(std::abs(pp.value(1.0)) < 1e-12 * std::abs(b.delta_derivative(0.0)));
    CHECK(rel(pp.value(0.1), -2.71670416735998485) < 1e-11);

    // Central differences of P U in delta converge at second order.
    auto fd_gap = [&](double h) {
        double worst = 0.0;
        const auto up = project_bubble(Bubble{b.delta + h}, 1e-3, 1.0);
        const auto dn = project_bubble(Bubble{b.delta - h}, 1e-3, 1.0);
        for (int i = 0; i < 300; ++i) {
            const double r = 1e-3 * std::pow(1e3, i / 299.0);
            worst = std::max(worst, std::abs(pp.value(r) - (up.value(r) - dn.value(r)) / (2.0 * h)));
        }
        return worst;
    };
    const double g1 = fd_gap(1e-3 * b.delta);
    const double g2 = fd_gap(5e-4 * b.delta);
    CHECK(g1 < 1e-3);
    CHECK(g1 / g2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("small-hole expansion residual") {
    const auto res = projection_expansion_error(Bubble{0.05}, 1e-4, 1.0);
    CHECK(res.max_abs > 0.0);
    CHECK(res.argmax >= 2e-4);
    CHECK_THROWS_AS(projection_expansion_error(Bubble{1e-4}, 1e-3, 1.0), PreconditionError);
}

TEST_CASE("partition validation") {
    Partition ok{5, 2, {{1, 3, 5}, {2, 4}}};
    CHECK(validate_partition(ok).ok());

    const auto c5 = validate_partition(Partition{2, 1, {{1, 2}}});
    CHECK(c5.condition == 5);
    CHECK(c5.witness == std::vector<int>{1, 2});

    // (1) is checked first.
    CHECK(validate_partition(Partition{3, 2, {{2, 3}, {1}}}).condition == 1);
    CHECK(validate_partition(Partition{3, 2, {{1, 3}, {}}}).condition == 2);
    CHECK(validate_partition(Partition{3, 2, {{1, 3}, {2, 3}}}).condition == 3);
    CHECK(validate_partition(Partition{4, 2, {{1, 3}, {2}}}).condition == 4);

    const auto oe = odd_even_partition(4);
    CHECK(oe.groups[0] == std::vector<int>{1, 3});
    CHECK(oe.groups[1] == std::vector<int>{2, 4});
    CHECK(component_of_bubble(oe) == std::vector<int>{0, 1, 0, 1});
}

TEST_CASE("rate schedule") {
    const auto s = rate_schedule(1e-6, {1.0, 1.0});
    CHECK(rel(s.deltas[0], 0.0154903473564761760) < 1e-12);
    CHECK(rel(s.deltas[1], 6.45563315648904304e-5) < 1e-12);
    CHECK(s.monotone);
    CHECK(s.consecutive_ratios[0] < 1.0);

    const auto one = rate_schedule(1e-4, {1.0});
    CHECK(one.deltas[0] == doctest::Approx(1e-2).epsilon(1e-14));

    const auto scaled = rate_schedule(1e-6, {3.0, 3.0});
    CHECK(rel(scaled.deltas[1], 3.0 * s.deltas[1]) < 1e-14);

    // Ratios shrink as eps decreases.
    const auto finer = rate_schedule(1e-8, {1.0, 1.0});
    CHECK(finer.consecutive_ratios[0] < s.consecutive_ratios[0]);
    CHECK(finer.eps_over_delta[1] < s.eps_over_delta[1]);

    CHECK_THROWS_AS(rate_schedule(1.0, {1.0}), PreconditionError);
}

TEST_CASE("tower config checks") {
    TowerConfig cfg;
    cfg.partition = odd_even_partition(2);
    cfg.mu = {1.0, 1.0};
    cfg.d = {1.05, 0.95};
    cfg.eps = 1e-5;
    CHECK_NOTHROW(check_tower_config(cfg));
    CHECK(cfg.coupling_between(0, 1) == -1.0);
    CHECK(cfg.coupling_between(1, 1) == 0.0);

    auto bad = cfg;
    bad.partition = Partition{2, 1, {{1, 2}}};
    bad.mu = {1.0};
    CHECK_THROWS_AS(check_tower_config(bad), PreconditionError);
    bad = cfg;
    bad.beta = 0.5;
    CHECK_THROWS_AS(check_tower_config(bad), PreconditionError);
    bad = cfg;
    bad.d = {1e4, 1.0};
    CHECK_THROWS_AS(check_tower_config(bad), PreconditionError);
}
