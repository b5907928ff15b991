#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fountain/core/bubble.hpp"
#include "fountain/core/constants.hpp"
#include "fountain/quadrature/mesh.hpp"
#include "fountain/quadrature/radial.hpp"

using namespace fountain;

namespace {

// int_a^b r^6 e^{-r} dr in closed form.
double r6_exp(double a, double b) {
    auto F = [](double r) {
        double s = 0.0;
        double fact = 720.0;  // 6!/k!
        double term = 1.0;
        for (int k = 0; k <= 6; ++k) {
            s += fact * term;
            term *= r;
            if (k < 6) fact /= (k + 1);
        }
        return -std::exp(-r) * s;
    };
    return F(b) - F(a);
}

}  // namespace

TEST_CASE("graded mesh invariants") {
    const auto plain = build_mesh(1e-6, 1.0, {}, 64);
    CHECK(plain->size() >= 6 * 64);
    CHECK(plain->nodes.front() == 1e-6);
    CHECK(plain->nodes.back() == 1.0);
    for (int dec = -6; dec < 0; ++dec) {
        CHECK(nodes_in(*plain, std::pow(10.0, dec), std::pow(10.0, dec + 1)) >= 64);
    }

    const auto graded = build_mesh(1e-6, 1.0, {1e-2, 1e-4}, 64);
    for (std::size_t i = 1; i < graded->size(); ++i) CHECK(graded->nodes[i] > graded->nodes[i - 1]);
    for (double s : {1e-2, 1e-4}) CHECK(nodes_in(*graded, s / 3.0, 3.0 * s) >= 64);
    for (int dec = -6; dec < 0; ++dec) {
        CHECK(nodes_in(*graded, std::pow(10.0, dec), std::pow(10.0, dec + 1)) >= 64);
    }
    const auto again = build_mesh(1e-6, 1.0, {1e-2, 1e-4}, 64);
    CHECK(again->nodes == graded->nodes);

    CHECK_THROWS_AS(build_mesh(1e-6, 1.0, {2.0}, 64), PreconditionError);
    CHECK_THROWS_AS(build_mesh(1.0, 1e-6, {}, 64), PreconditionError);
}

TEST_CASE("radial integration") {
    const auto ball = build_mesh(1e-8, 1.0, {}, 64);
    const double pi = std::numbers::pi;
    CHECK(integrate_radial([](double) { return 1.0; }, *ball) == doctest::Approx(pi * pi / 2.0).epsilon(1e-13));

    const auto wide = build_mesh(1e-6, 1e3, {}, 64);
    const Bubble u{1.0};
    const double b4 = integrate_radial([&](double r) { return std::pow(u.value(r), 4); }, *wide);
    CHECK(std::abs(b4 / (32.0 * pi * pi / 3.0) - 1.0) < 1e-6);
    CHECK(lp_norm([&](double r) { return u.value(r); }, *wide, 4.0) ==
          doctest::Approx(std::pow(32.0 * pi * pi / 3.0, 0.25)).epsilon(1e-6));
    const auto sampled = sample(wide, [&](double r) { return u.value(r); });
    CHECK(std::pow(lp_norm(sampled, 4.0), 4) == doctest::Approx(32.0 * pi * pi / 3.0).epsilon(1e-3));

    // Linearity of the sampled rule.
    const auto f = sample(ball, [](double r) { return std::sin(r); });
    const auto g = sample(ball, [](double r) { return r * r; });
    auto h = f;
    for (std::size_t i = 0; i < h.size(); ++i) h.values[i] = 2.0 * f[i] - 3.0 * g[i];
    CHECK(integrate_radial(h) == doctest::Approx(2.0 * integrate_radial(f) - 3.0 * integrate_radial(g)).epsilon(1e-13));

    CHECK_THROWS_AS(integrate_radial([](double) { return NAN; }, *ball), PreconditionError);
}

TEST_CASE("gauss convergence on a smooth integrand") {
    const double exact = kSphere3Area * r6_exp(1e-3, 10.0);
    double prev = INFINITY;
    for (int ppd : {2, 4, 8, 16}) {
        const auto mesh = build_mesh(1e-3, 10.0, {}, ppd);
        const double err = std::abs(integrate_radial([](double r) { return r * r * r * std::exp(-r); }, *mesh) - exact) / exact;
        if (prev > 1e-12) CHECK((err < prev / 8.0 || err < 1e-13));
        prev = err;
    }
}

TEST_CASE("h1 inner product") {
    const double delta = 0.1;
    const double eps = 1e-3;
    const auto mesh = build_mesh(eps, 1.0, {delta}, 64);
    const auto pu = project_bubble(Bubble{delta}, eps, 1.0);
    const auto pu_h = sample(mesh, pu);
    const double h1sq = h1_inner(pu_h, pu_h);
    const double weak = integrate_radial([&](double r) { return std::pow(pu.bubble.value(r), 3) * pu.value(r); }, *mesh);
    CHECK(std::abs(h1sq / weak - 1.0) < 5e-3);

    const auto zero = zeros(mesh);
    CHECK(h1_inner(zero, zero) == 0.0);
    auto scaled = pu_h;
    for (double& v : scaled.values) v *= 3.0;
    CHECK(h1_inner(scaled, pu_h) == doctest::Approx(3.0 * h1sq).epsilon(1e-14));

    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss;
    for (int t = 0; t < 20; ++t) {
        auto u = zeros(mesh);
        for (std::size_t i = 1; i + 1 < u.size(); ++i) u.values[i] = gauss(rng);
        CHECK(h1_inner(u, u) > 0.0);
    }

    const auto other = build_mesh(eps, 1.0, {}, 32);
    CHECK_THROWS_AS(h1_inner(pu_h, zeros(other)), PreconditionError);
}

TEST_CASE("lp norms") {
    const auto mesh = build_mesh(1e-3, 1.0, {}, 64);
    CHECK(lp_norm(zeros(mesh), 2.0) == 0.0);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (int t = 0; t < 10; ++t) {
        const double a = coef(rng), b = coef(rng), c = coef(rng), d = coef(rng);
        const auto u = sample(mesh, [&](double r) { return a + b * std::cos(3.0 * r); });
        const auto v = sample(mesh, [&](double r) { return c * r + d * std::sin(r); });
        auto uv = u;
        for (std::size_t i = 0; i < uv.size(); ++i) uv.values[i] = u[i] * v[i];
        CHECK(lp_norm(uv, 2.0) <= lp_norm(u, 4.0) * lp_norm(v, 4.0) * (1.0 + 1e-12));
    }
    CHECK_THROWS_AS(lp_norm(zeros(mesh), 0.5), PreconditionError);
}
