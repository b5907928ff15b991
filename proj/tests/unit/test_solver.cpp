#include <doctest.h>

#include <cmath>
#include <random>

#include "fountain/quadrature/radial.hpp"
#include "fountain/solver/continuation.hpp"
#include "fountain/solver/rates.hpp"
#include "fountain/solver/spectral.hpp"
#include "fountain/solver/system.hpp"

using namespace fountain;

namespace {

const std::vector<double> kDStar = {1.04911506342164818, 0.953184292996936574};

TowerConfig k2_config(double eps) {
    TowerConfig cfg;
    cfg.eps = eps;
    cfg.partition = odd_even_partition(2);
    cfg.mu = {1.0, 1.0};
    cfg.d = kDStar;
    return cfg;
}

double relative_gap(const std::vector<RadialGridFunction>& a, const std::vector<RadialGridFunction>& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto diff = a[i];
        for (std::size_t p = 0; p < diff.size(); ++p) diff.values[p] -= b[i].values[p];
        num += std::pow(h1_norm(diff), 2);
        den += std::pow(h1_norm(b[i]), 2);
    }
    return std::sqrt(num / den);
}

Eigen::VectorXd residual_vector(const SystemState& s) { return pack(assemble_residual(s).F); }

}  // namespace

TEST_CASE("jacobian is the derivative of the residual") {
    const auto cfg = k2_config(1e-4);
    const auto mesh = solver_mesh(cfg, 32);
    const auto state = tower_ansatz(cfg, mesh, cfg.d);
    const auto J = assemble_jacobian(state);
    const Eigen::VectorXd x0 = pack(state.u);
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    Eigen::VectorXd v(x0.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = g(rng) * std::abs(x0[i]);
    const Eigen::VectorXd F0 = residual_vector(state);
    const Eigen::VectorXd Jv = J * v;

    std::vector<double> err;
    for (double h : {1e-4, 1e-5, 1e-6}) {
        SystemState moved = state;
        moved.u = unpack(mesh, 2, x0 + h * v);
        err.push_back(((residual_vector(moved) - F0) / h - Jv).norm() / Jv.norm());
    }
    // First-order remainder: each tenfold step reduction gains about a decade.
    CHECK(err[0] < 1e-3);
    CHECK(err[0] / err[1] > 5.0);
    CHECK(err[1] / err[2] > 3.0);
}

TEST_CASE("jacobian is symmetric") {
    const auto cfg = k2_config(1e-4);
    const auto mesh = solver_mesh(cfg, 32);
    const auto J = assemble_jacobian(tower_ansatz(cfg, mesh, cfg.d));
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    Eigen::VectorXd v(J.rows()), w(J.rows());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v[i] = g(rng);
        w[i] = g(rng);
    }
    const double a = w.dot(J * v);
    const double b = v.dot(J * w);
    CHECK(std::abs(a - b) <= 1e-12 * (std::abs(a) + std::abs(b)) + 1e-12 * (J * v).norm() * w.norm());
}

TEST_CASE("without coupling the jacobian has no off-diagonal blocks") {
    auto cfg = k2_config(1e-4);
    cfg.beta = 0.0;
    const auto mesh = solver_mesh(cfg, 32);
    const auto J = assemble_jacobian(tower_ansatz(cfg, mesh, cfg.d));
    int cross = 0;
    for (int c = 0; c < J.outerSize(); ++c) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(J, c); it; ++it) {
            if (it.row() % 2 != it.col() % 2 && it.value() != 0.0) ++cross;
        }
    }
    CHECK(cross == 0);
}

TEST_CASE("newton converges from the tower ansatz") {
    const auto cfg = k2_config(1e-5);
    const auto s = newton_solve(cfg, 64);
    CHECK(s.converged);
    CHECK(s.newton_iters <= 15);
    CHECK(s.residual_h1 < 1e-10 * s.ansatz_norm);
    for (const auto& u : s.u) {
        CHECK(u.values.front() == 0.0);
        CHECK(u.values.back() == 0.0);
        for (std::size_t p = 1; p + 1 < u.size(); ++p) REQUIRE(u.values[p] > 0.0);
    }
}

TEST_CASE("mu scaling is an equivariance of the system") {
    // u_i = mu_i^{-1/2} v_i turns the mu-system with coupling beta into the
    // unit-mu system with coupling beta_ij = beta / mu_j.
    auto a = k2_config(1e-5);
    a.mu = {4.0, 1.0};
    auto b = k2_config(1e-5);
    b.coupling = {0.0, -1.0, -0.25, 0.0};
    const auto sa = newton_solve(a, 48);
    const auto sb = newton_solve(b, 48);
    REQUIRE(sa.converged);
    REQUIRE(sb.converged);
    auto scaled = sb.u;
    for (double& v : scaled[0].values) v *= 0.5;
    CHECK(relative_gap(sa.u, scaled) < 1e-8);
}

TEST_CASE("single bubble solve recovers the one-scale schedule") {
    TowerConfig cfg;
    cfg.eps = 1e-4;
    cfg.partition = odd_even_partition(1);
    cfg.mu = {1.0};
    cfg.beta = 0.0;
    cfg.d = {1.0};  // (Gamma / (A^2 tau(0)))^{1/4} = 1 on the unit ball
    const auto s = newton_solve(cfg, 64);
    REQUIRE(s.converged);
    const auto fit = extract_rates(s);
    CHECK(fit.d[0] == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("rate fit recovers the scales of an exact tower") {
    const auto cfg = k2_config(1e-5);
    const auto mesh = solver_mesh(cfg, 64);
    const auto sched = rate_schedule(cfg);
    const std::vector<double> deltas = {sched.deltas[0] * 1.07, sched.deltas[1] * 0.93};
    const auto synthetic = tower_ansatz_at(cfg, mesh, deltas);
    const auto fit = extract_rates(synthetic);
    for (int j = 0; j < 2; ++j) CHECK(std::abs(fit.deltas[j] / deltas[j] - 1.0) < 1e-6);
    CHECK(corrector_norm(synthetic, fit).phi_h1 < 1e-6);

    TowerConfig one;
    one.eps = 1e-7;
    one.partition = odd_even_partition(1);
    one.mu = {1.0};
    one.d = {1.0};
    const auto m1 = solver_mesh(one, 64);
    const auto single = tower_ansatz_at(one, m1, {1e-3});
    CHECK(extract_rates(single).deltas[0] == doctest::Approx(1e-3).epsilon(1e-9));
}

TEST_CASE("rate fit rejects a state that is not a tower") {
    const auto cfg = k2_config(1e-5);
    const auto mesh = solver_mesh(cfg, 32);
    auto s = tower_ansatz(cfg, mesh, cfg.d);
    for (double& v : s.u[1].values) v *= 3.0;
    for (double& v : s.u[0].values) v = 0.0;
    CHECK_THROWS_AS(extract_rates(s), FitError);
}

TEST_CASE("continuation warm start does not move the fixed point") {
    const auto cfg = k2_config(1e-4);
    CHECK(continuation_sweep(cfg, {}, 48).points.empty());
    CHECK_THROWS_AS(continuation_sweep(cfg, {1e-5, 1e-4}, 48), PreconditionError);

    const auto sweep = continuation_sweep(cfg, {1e-4, 1e-5}, 48);
    REQUIRE(sweep.points.size() == 2);
    const auto cold = newton_solve(k2_config(1e-5), 48);
    REQUIRE(cold.converged);
    CHECK(relative_gap(sweep.points[1].state.u, cold.u) < 1e-8);
}

TEST_CASE("projected linearization stays invertible") {
    TowerConfig cfg;
    cfg.eps = 1e-4;
    cfg.partition = odd_even_partition(1);
    cfg.mu = {1.0};
    cfg.beta = 0.0;
    cfg.d = {1.0};
    const auto s = newton_solve(cfg, 32);
    const auto fit = extract_rates(s);
    const auto rep = projected_linearization_sigma_min(s, fit.deltas);
    CHECK(rep.projected > 0.0);
    CHECK(rep.projected > rep.unprojected);
}

TEST_CASE("runs outside the envelope are refused") {
    auto cfg = k2_config(1e-5);
    CHECK_THROWS_AS(check_envelope(cfg, 512), EnvelopeError);
    cfg.eps = 1e-10;
    CHECK_THROWS_AS(check_envelope(cfg, 64), EnvelopeError);
    TowerConfig five;
    five.partition = odd_even_partition(5);
    five.mu = {1.0, 1.0};
    five.d.assign(5, 1.0);
    five.eps = 1e-9;
    CHECK_THROWS_AS(check_envelope(five, 64), EnvelopeError);
}
