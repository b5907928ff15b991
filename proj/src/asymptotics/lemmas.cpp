#include "fountain/asymptotics/lemmas.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "fountain/core/bubble.hpp"
#include "fountain/core/constants.hpp"
#include "fountain/core/error.hpp"
#include "fountain/quadrature/radial.hpp"
#include "fountain/solver/fem.hpp"

namespace fountain {

namespace {

void require_order(double lo, double hi, const char* what) {
    if (!(lo < hi)) throw PreconditionError(what);
}

MeshPtr lab_mesh(double eps, double R, std::vector<double> scales, int ppd) {
    require_order(0.0, eps, "annulus requires eps > 0");
    require_order(eps, R, "annulus requires eps < R");
    return build_mesh(eps, R, scales, ppd);
}

}  // namespace

SingleEnergy single_bubble_energy(double delta, double eps, double R, int ppd) {
    require_order(eps, delta, "single_bubble_energy: requires eps < delta");
    require_order(delta, R, "single_bubble_energy: requires delta < R");
    const auto mesh = lab_mesh(eps, R, {delta}, ppd);
    const auto pu = project_bubble(Bubble{delta}, eps, R);
    SingleEnergy out;
    out.measured = integrate_radial(
        [&](double r) {
            const double g = pu.radial_derivative(r);
            const double v = pu.value(r);
            return 0.5 * g * g - 0.25 * v * v * v * v;
        },
        *mesh);
    const UniversalConstants c;
    const double tau = robin_ball_center(R);
    const double b4 = c.B_exact / 4.0;
    out.model = b4 + 0.5 * c.A_exact * c.A_exact * tau * delta * delta + 0.5 * c.Gamma_exact * (eps / delta) * (eps / delta);
    out.ratio = (out.measured - b4) / (out.model - b4);
    return out;
}

double interaction_integral(double delta_a, double delta_b, double eps, double R, int ppd) {
    const Bubble a{delta_a};
    const Bubble b{delta_b};
    // The mesh is built from the sorted pair so the result is exactly symmetric.
    const auto mesh = lab_mesh(eps, R, {std::max(delta_a, delta_b), std::min(delta_a, delta_b)}, ppd);
    return integrate_radial(
        [&](double r) {
            const double u = a.value(r) * b.value(r);
            return u * u;
        },
        *mesh);
}

PairInteraction interaction_pair(double delta_i, double delta_j, double eps, double R, int ppd) {
    require_order(delta_i, delta_j, "interaction_pair: requires delta_i < delta_j");
    require_order(eps, delta_i, "interaction_pair: requires eps < delta_i");
    PairInteraction out;
    out.measured = interaction_integral(delta_i, delta_j, eps, R, ppd);
    const double q = delta_i / delta_j;
    out.model = UniversalConstants{}.interaction_exact * q * q * std::log(1.0 / q);
    out.ratio = out.measured / out.model;
    return out;
}

ProjectedPairInteraction projected_interaction_pair(double delta_i, double delta_j, double eps, double R, int ppd) {
    const auto base = interaction_pair(delta_i, delta_j, eps, R, ppd);
    const auto pi = project_bubble(Bubble{delta_i}, eps, R);
    const auto pj = project_bubble(Bubble{delta_j}, eps, R);
    const auto mesh = lab_mesh(eps, R, {delta_j, delta_i}, ppd);
    ProjectedPairInteraction out;
    out.unprojected = base.measured;
    out.model = base.model;
    out.projected = integrate_radial(
        [&](double r) {
            const double u = pi.value(r) * pj.value(r);
            return u * u;
        },
        *mesh);
    out.relative_gap = std::abs(out.projected - out.unprojected) / out.model;
    return out;
}

double lq_bubble_norm(double delta, double q, double R, int ppd) {
    if (!(q > 0.0)) throw PreconditionError("lq_bubble_norm: q must be positive");
    require_order(0.0, delta, "lq_bubble_norm: delta must be positive");
    require_order(delta, R, "lq_bubble_norm: requires delta < R");
    // Integrate over [r0, R] and add the (constant-density) core analytically.
    const double r0 = 1e-6 * delta;
    const Bubble b{delta};
    const auto mesh = lab_mesh(r0, R, {delta}, ppd);
    const double core = kSphere3Area * std::pow(b.value(0.0), q) * std::pow(r0, 4) / 4.0;
    return core + integrate_radial([&](double r) { return std::pow(b.value(r), q); }, *mesh);
}

MixedInteraction mixed_pq_interaction(double rho1, double rho2, double p, double q, double eps, double R, int ppd) {
    if (std::abs(p + q - 4.0) > 1e-12 || !(q > 1.0) || !(q < 2.0) || !(p > 2.0)) {
        throw PreconditionError("mixed_pq_interaction: requires p + q = 4 and 1 < q < 2 < p");
    }
    require_order(rho2, rho1, "mixed_pq_interaction: requires rho2 < rho1");
    require_order(eps, rho2, "mixed_pq_interaction: requires eps < rho2");
    const Bubble b1{rho1};
    const Bubble b2{rho2};
    const auto mesh = lab_mesh(eps, R, {rho1, rho2}, ppd);
    MixedInteraction out;
    out.forward = integrate_radial([&](double r) { return std::pow(b1.value(r), p) * std::pow(b2.value(r), q); }, *mesh);
    out.reverse = integrate_radial([&](double r) { return std::pow(b2.value(r), p) * std::pow(b1.value(r), q); }, *mesh);
    return out;
}

double triple_interaction(double rho1, double rho2, double rho3, double eps, double R, int ppd) {
    require_order(rho2, rho1, "triple_interaction: requires rho2 < rho1");
    require_order(rho3, rho2, "triple_interaction: requires rho3 < rho2");
    require_order(eps, rho3, "triple_interaction: requires eps < rho3");
    const Bubble b1{rho1};
    const Bubble b2{rho2};
    const Bubble b3{rho3};
    const auto mesh = lab_mesh(eps, R, {rho1, rho2, rho3}, ppd);
    return integrate_radial(
        [&](double r) { return std::pow(b1.value(r) * b2.value(r) * b3.value(r), 4.0 / 3.0); }, *mesh);
}

double projection_l2_error(double delta, double eps, double R, int ppd) {
    require_order(eps, delta, "projection_l2_error: requires eps < delta");
    require_order(delta, R, "projection_l2_error: requires delta < R");
    const auto pu = project_bubble(Bubble{delta}, eps, R);
    const auto mesh = lab_mesh(eps, R, {delta}, ppd);
    return integrate_radial(
        [&](double r) {
            const double u = pu.bubble.value(r);
            const double gap = pu.value(r) - u;
            return u * u * gap * gap;
        },
        *mesh);
}

RemainderNorm remainder_norm(const TowerConfig& cfg, int ppd) {
    check_tower_config(cfg);
    if (cfg.k() < 1) throw PreconditionError("remainder_norm: needs at least one bubble");
    const int m = cfg.m();
    const int k = cfg.k();
    const auto sched = rate_schedule(cfg);
    const auto owner = component_of_bubble(cfg.partition);
    const auto mesh = build_mesh(cfg.eps, cfg.R, sched.deltas, ppd);

    std::vector<ProjectedBubble> pu;
    for (int l = 0; l < k; ++l) pu.push_back(project_bubble(Bubble{sched.deltas[l]}, cfg.eps, cfg.R));
    auto component = [&](int i, double r) {
        double s = 0.0;
        for (int l = 0; l < k; ++l) {
            if (owner[l] == i) s += pu[l].value(r);
        }
        return s / std::sqrt(cfg.mu[i]);
    };

    RemainderNorm out;
    double total = 0.0;
    for (int i = 0; i < m; ++i) {
        const auto g = [&](double r) {
            const double ui = component(i, r);
            double bubbles = 0.0;
            for (int l = 0; l < k; ++l) {
                if (owner[l] == i) bubbles += std::pow(pu[l].bubble.value(r), 3);
            }
            double coupling = 0.0;
            for (int j = 0; j < m; ++j) {
                if (j == i) continue;
                const double uj = component(j, r);
                coupling += cfg.coupling_between(i, j) * uj * uj;
            }
            const double fp = ui > 0.0 ? ui * ui * ui : 0.0;
            return cfg.mu[i] * fp - bubbles / std::sqrt(cfg.mu[i]) + ui * coupling;
        };
        auto v = dirichlet_solve(mesh, g);

        std::vector<RadialGridFunction> psi;
        for (int l = 0; l < k; ++l) {
            if (owner[l] != i) continue;
            psi.push_back(sample(mesh, project_dbubble(Bubble{sched.deltas[l]}, cfg.eps, cfg.R)));
            const double nrm = h1_norm(psi.back());
            for (double& x : psi.back().values) x /= nrm;
        }
        const auto n = static_cast<Eigen::Index>(psi.size());
        Eigen::MatrixXd G(n, n);
        Eigen::VectorXd b(n);
        for (Eigen::Index a = 0; a < n; ++a) {
            b[a] = h1_inner(psi[a], v);
            for (Eigen::Index c = 0; c < n; ++c) G(a, c) = h1_inner(psi[a], psi[c]);
        }
        const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(G).eigenvalues();
        const double cond = ev.maxCoeff() / std::max(ev.minCoeff(), 1e-300);
        out.gram_condition = std::max(out.gram_condition, cond);
        if (!(cond <= 1e12)) throw ConditioningError("remainder_norm: Gram matrix too ill-conditioned", cond);
        const Eigen::VectorXd coef = G.ldlt().solve(b);
        for (Eigen::Index a = 0; a < n; ++a) {
            for (std::size_t x = 0; x < v.size(); ++x) v.values[x] -= coef[a] * psi[a].values[x];
        }
        const double nv = h1_norm(v);
        out.per_component.push_back(nv);
        total += nv * nv;
    }
    out.total = std::sqrt(total);
    const double k1 = k + 1.0;
    out.rate = std::pow(cfg.eps, 1.0 / k1) * std::pow(std::log(1.0 / cfg.eps), -1.0 / k1);
    return out;
}

}  // namespace fountain
