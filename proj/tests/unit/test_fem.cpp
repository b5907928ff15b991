#include <doctest.h>

#include <cmath>
#include <random>

#include "fountain/core/bubble.hpp"
#include "fountain/quadrature/mesh.hpp"
#include "fountain/solver/fem.hpp"

using namespace fountain;

TEST_CASE("stiffness solve inverts apply") {
    const auto mesh = build_mesh(1e-4, 1.0, {1e-2}, 32);
    const auto K = assemble_stiffness(*mesh);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> gauss;
    std::vector<double> x(K.size());
    for (double& v : x) v = gauss(rng);
    const auto y = K.solve(K.apply(x));
    double err = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) err = std::max(err, std::abs(y[i] - x[i]));
    CHECK(err < 1e-8);
}

TEST_CASE("dirichlet solve reproduces the projected bubble") {
    const double delta = 0.1;
    const double eps = 1e-3;
    const auto mesh = build_mesh(eps, 1.0, {delta}, 64);
    const auto v = discrete_projected_bubble(mesh, delta);
    const auto exact = sample(mesh, project_bubble(Bubble{delta}, eps, 1.0));
    auto diff = v;
    for (std::size_t i = 0; i < diff.size(); ++i) diff.values[i] -= exact[i];
    CHECK(h1_norm(diff) / h1_norm(exact) < 5e-3);
    CHECK(v.values.front() == 0.0);
    CHECK(v.values.back() == 0.0);

    const auto z = dirichlet_solve(zeros(mesh));
    for (double x : z.values) CHECK(x == 0.0);

    const auto g1 = sample(mesh, [](double r) { return std::cos(r); });
    const auto g2 = sample(mesh, [](double r) { return 1.0 / (r + 0.1); });
    auto g12 = g1;
    for (std::size_t i = 0; i < g12.size(); ++i) g12.values[i] += g2[i];
    const auto s1 = dirichlet_solve(g1);
    const auto s2 = dirichlet_solve(g2);
    const auto s12 = dirichlet_solve(g12);
    for (std::size_t i = 0; i < s12.size(); ++i) CHECK(s12[i] == doctest::Approx(s1[i] + s2[i]).epsilon(1e-12));
}

TEST_CASE("discrete dbubble is the delta-derivative of the discrete bubble") {
    const double delta = 0.05;
    const auto mesh = build_mesh(1e-4, 1.0, {delta}, 64);
    const auto dv = discrete_projected_dbubble(mesh, delta);
    const double h = 1e-5 * delta;
    const auto up = discrete_projected_bubble(mesh, delta + h);
    const auto dn = discrete_projected_bubble(mesh, delta - h);
    auto fd = up;
    for (std::size_t i = 0; i < fd.size(); ++i) fd.values[i] = (up[i] - dn[i]) / (2.0 * h) - dv[i];
    CHECK(h1_norm(fd) < 1e-6 * h1_norm(dv));
}
