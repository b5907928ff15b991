#include "fountain/solver/rates.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace fountain {

namespace {

std::vector<RadialGridFunction> tower_gap(const SystemState& state, const std::vector<double>& deltas) {
    const auto model = tower_ansatz_at(state.cfg, state.mesh, deltas);
    std::vector<RadialGridFunction> gap = state.u;
    for (std::size_t i = 0; i < gap.size(); ++i) {
        for (std::size_t n = 0; n < gap[i].size(); ++n) gap[i].values[n] -= model.u[i].values[n];
    }
    return gap;
}

double total_norm_sq(const std::vector<RadialGridFunction>& u) {
    double s = 0.0;
    for (const auto& c : u) s += h1_inner(c, c);
    return s;
}

}  // namespace

RateFit extract_rates(const SystemState& state, const std::vector<double>* initial_d) {
    const auto& cfg = state.cfg;
    const int k = cfg.k();
    const auto owner = component_of_bubble(cfg.partition);
    const double signal = std::sqrt(total_norm_sq(state.u));
    if (!(signal > 0.0)) throw FitError("extract_rates: zero state", 1.0);

    Eigen::VectorXd y(k);
    {
        const auto s = rate_schedule(cfg.eps, initial_d ? *initial_d : cfg.d);
        for (int j = 0; j < k; ++j) y[j] = std::log(s.deltas[j]);
    }
    auto deltas_of = [&](const Eigen::VectorXd& yy) {
        std::vector<double> dl(k);
        for (int j = 0; j < k; ++j) dl[j] = std::exp(yy[j]);
        return dl;
    };

    auto gap = tower_gap(state, deltas_of(y));
    double cost = total_norm_sq(gap);
    double damping = 1e-6;
    int it = 0;
    for (; it < 200; ++it) {
        // Columns g_j = d(model)/d(log delta_j) = mu^{-1/2} delta_j P_h psi_j in component owner[j].
        std::vector<RadialGridFunction> cols;
        for (int j = 0; j < k; ++j) {
            auto g = discrete_projected_dbubble(state.mesh, std::exp(y[j]));
            const double c = std::exp(y[j]) / std::sqrt(cfg.mu[owner[j]]);
            for (double& v : g.values) v *= c;
            cols.push_back(std::move(g));
        }
        Eigen::MatrixXd G = Eigen::MatrixXd::Zero(k, k);
        Eigen::VectorXd b(k);
        for (int a = 0; a < k; ++a) {
            b[a] = h1_inner(cols[a], gap[owner[a]]);
            for (int c = 0; c < k; ++c) {
                if (owner[a] == owner[c]) G(a, c) = h1_inner(cols[a], cols[c]);
            }
        }
        bool accepted = false;
        Eigen::VectorXd step;
        for (int tries = 0; tries < 40; ++tries) {
            Eigen::MatrixXd Gd = G;
            for (int a = 0; a < k; ++a) Gd(a, a) *= 1.0 + damping;
            step = Gd.ldlt().solve(b);
            const Eigen::VectorXd yt = y + step;
            auto gap_t = tower_gap(state, deltas_of(yt));
            const double cost_t = total_norm_sq(gap_t);
            if (cost_t <= cost) {
                y = yt;
                gap = std::move(gap_t);
                cost = cost_t;
                damping = std::max(1e-12, damping / 10.0);
                accepted = true;
                break;
            }
            damping *= 10.0;
        }
        if (!accepted || step.norm() < 1e-13) break;
    }

    RateFit fit;
    fit.deltas = deltas_of(y);
    fit.iterations = it;
    fit.residual = std::sqrt(cost) / signal;
    for (int j = 0; j < k; ++j) fit.d.push_back(fit.deltas[j] / rate_scale(cfg.eps, j + 1, k));
    if (fit.residual > 0.2) throw FitError("extract_rates: tower fit leaves more than 20% of the signal", fit.residual);
    for (int j = 0; j + 1 < k; ++j) {
        if (!(fit.deltas[j + 1] < fit.deltas[j])) throw FitError("extract_rates: fitted scales not ordered", fit.residual);
    }
    return fit;
}

CorrectorNorm corrector_norm(const SystemState& state, const RateFit& fit) {
    const auto gap = tower_gap(state, fit.deltas);
    CorrectorNorm out;
    out.phi_h1 = std::sqrt(total_norm_sq(gap));
    out.over_delta1 = out.phi_h1 / fit.deltas.front();
    const double k1 = state.cfg.k() + 1.0;
    const double eps = state.cfg.eps;
    out.over_rate = out.phi_h1 / (std::pow(eps, 1.0 / k1) * std::pow(std::log(1.0 / eps), -1.0 / k1));
    return out;
}

}  // namespace fountain
