#include "fountain/solver/system.hpp"

#include <Eigen/SparseLU>
#include <cmath>
#include <string>

namespace fountain {

namespace {

std::vector<double> coupling_matrix(const TowerConfig& cfg) {
    const int m = cfg.m();
    std::vector<double> B(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) B[i * m + j] = cfg.coupling_between(i, j);
    }
    return B;
}

// Visits every Gauss point of every element with the interpolated component
// values; `visit(e, s, weight, values)` gets the local coordinate s in [0, 1]
// and the quadrature weight including |S^3| r^3.
template <class Visit>
void for_each_gauss_point(const SystemState& state, Visit&& visit) {
    const auto& nodes = state.mesh->nodes;
    const auto& rule = gauss_legendre(kLoadGaussPoints);
    const int m = state.cfg.m();
    std::vector<double> vals(m);
    for (std::size_t e = 0; e + 1 < nodes.size(); ++e) {
        const double r0 = nodes[e];
        const double h = nodes[e + 1] - r0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double s = 0.5 * (1.0 + rule.nodes[q]);
            const double r = r0 + s * h;
            const double w = kSphere3Area * 0.5 * h * rule.weights[q] * r * r * r;
            for (int i = 0; i < m; ++i) vals[i] = (1.0 - s) * state.u[i].values[e] + s * state.u[i].values[e + 1];
            visit(e, s, w, vals);
        }
    }
}

double positive_cube(double s) { return s > 0.0 ? s * s * s : 0.0; }
double positive_square(double s) { return s > 0.0 ? s * s : 0.0; }

double h1_total(const std::vector<RadialGridFunction>& u) {
    double s = 0.0;
    for (const auto& c : u) s += h1_inner(c, c);
    return std::sqrt(s);
}

}  // namespace

void check_envelope(const TowerConfig& cfg, int points_per_decade) {
    if (cfg.k() > kMaxBubbles) {
        throw EnvelopeError("k = " + std::to_string(cfg.k()) + " exceeds the supported maximum of " +
                            std::to_string(kMaxBubbles) + " bubbles");
    }
    if (cfg.eps < kMinEps) throw EnvelopeError("eps below the supported minimum of 1e-9");
    if (points_per_decade > kMaxPointsPerDecade || points_per_decade < 4) {
        throw EnvelopeError("points_per_decade must lie in [4, 256]");
    }
}

MeshPtr solver_mesh(const TowerConfig& cfg, int points_per_decade) {
    check_tower_config(cfg);
    check_envelope(cfg, points_per_decade);
    const auto s = rate_schedule(cfg);
    return build_mesh(cfg.eps, cfg.R, s.deltas, points_per_decade);
}

SystemState tower_ansatz(const TowerConfig& cfg, const MeshPtr& mesh, const std::vector<double>& d) {
    return tower_ansatz_at(cfg, mesh, rate_schedule(cfg.eps, d).deltas);
}

SystemState tower_ansatz_at(const TowerConfig& cfg, const MeshPtr& mesh, const std::vector<double>& deltas) {
    if (static_cast<int>(deltas.size()) != cfg.k()) throw PreconditionError("tower_ansatz: need k scales");
    const auto owner = component_of_bubble(cfg.partition);
    SystemState state;
    state.cfg = cfg;
    state.mesh = mesh;
    state.u.assign(cfg.m(), zeros(mesh));
    for (int j = 0; j < cfg.k(); ++j) {
        const auto pu = discrete_projected_bubble(mesh, deltas[j]);
        const double scale = 1.0 / std::sqrt(cfg.mu[owner[j]]);
        auto& target = state.u[owner[j]].values;
        for (std::size_t n = 0; n < target.size(); ++n) target[n] += scale * pu.values[n];
    }
    state.ansatz_norm = h1_total(state.u);
    return state;
}

Eigen::VectorXd pack(const std::vector<RadialGridFunction>& u) {
    const int m = static_cast<int>(u.size());
    const std::size_t n = u.front().size() - 2;
    Eigen::VectorXd x(static_cast<Eigen::Index>(n * m));
    for (std::size_t p = 0; p < n; ++p) {
        for (int i = 0; i < m; ++i) x[static_cast<Eigen::Index>(p * m + i)] = u[i].values[p + 1];
    }
    return x;
}

std::vector<RadialGridFunction> unpack(const MeshPtr& mesh, int m, const Eigen::VectorXd& x) {
    std::vector<RadialGridFunction> u(m, zeros(mesh));
    const std::size_t n = mesh->size() - 2;
    for (std::size_t p = 0; p < n; ++p) {
        for (int i = 0; i < m; ++i) u[i].values[p + 1] = x[static_cast<Eigen::Index>(p * m + i)];
    }
    return u;
}

ResidualResult assemble_residual(const SystemState& state) {
    const int m = state.cfg.m();
    const auto B = coupling_matrix(state.cfg);
    const auto& mu = state.cfg.mu;
    const std::size_t n_nodes = state.mesh->size();
    std::vector<std::vector<double>> load(m, std::vector<double>(n_nodes, 0.0));

    for_each_gauss_point(state, [&](std::size_t e, double s, double w, const std::vector<double>& v) {
        for (int i = 0; i < m; ++i) {
            double q = mu[i] * positive_cube(v[i]);
            for (int j = 0; j < m; ++j) {
                if (j != i) q += B[i * m + j] * v[i] * v[j] * v[j];
            }
            load[i][e] += w * q * (1.0 - s);
            load[i][e + 1] += w * q * s;
        }
    });

    const auto K = assemble_stiffness(*state.mesh);
    ResidualResult out;
    double total = 0.0;
    for (int i = 0; i < m; ++i) {
        auto Ku = K.apply(to_interior(state.u[i]));
        for (std::size_t p = 0; p < Ku.size(); ++p) Ku[p] -= load[i][p + 1];
        const double rn = riesz_norm(K, Ku);
        total += rn * rn;
        out.F.push_back(from_interior(state.mesh, Ku));
    }
    out.residual_h1 = std::sqrt(total);
    return out;
}

Eigen::SparseMatrix<double> assemble_jacobian(const SystemState& state) {
    const int m = state.cfg.m();
    const auto B = coupling_matrix(state.cfg);
    const auto& mu = state.cfg.mu;
    const std::size_t n = state.mesh->size() - 2;
    const auto N = static_cast<Eigen::Index>(n * m);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(n * m * m * 3 * 4 + n * m * 3);

    const auto K = assemble_stiffness(*state.mesh);
    for (std::size_t p = 0; p < n; ++p) {
        for (int i = 0; i < m; ++i) {
            const auto row = static_cast<Eigen::Index>(p * m + i);
            trip.emplace_back(row, row, K.diag[p]);
            if (p + 1 < n) {
                const auto col = static_cast<Eigen::Index>((p + 1) * m + i);
                trip.emplace_back(row, col, K.off[p]);
                trip.emplace_back(col, row, K.off[p]);
            }
        }
    }

    std::vector<double> D(static_cast<std::size_t>(m) * m);
    for_each_gauss_point(state, [&](std::size_t e, double s, double w, const std::vector<double>& v) {
        for (int i = 0; i < m; ++i) {
            double diag = 3.0 * mu[i] * positive_square(v[i]);
            for (int j = 0; j < m; ++j) {
                if (j == i) continue;
                diag += B[i * m + j] * v[j] * v[j];
                D[i * m + j] = 2.0 * B[i * m + j] * v[i] * v[j];
            }
            D[i * m + i] = diag;
        }
        const double phi[2] = {1.0 - s, s};
        const std::size_t node[2] = {e, e + 1};
        for (int a = 0; a < 2; ++a) {
            if (node[a] == 0 || node[a] == n + 1) continue;
            for (int b = 0; b < 2; ++b) {
                if (node[b] == 0 || node[b] == n + 1) continue;
                const double wab = w * phi[a] * phi[b];
                for (int i = 0; i < m; ++i) {
                    for (int j = 0; j < m; ++j) {
                        const double val = D[i * m + j];
                        if (val == 0.0) continue;
                        trip.emplace_back(static_cast<Eigen::Index>((node[a] - 1) * m + i),
                                          static_cast<Eigen::Index>((node[b] - 1) * m + j), -wab * val);
                    }
                }
            }
        }
    });

    Eigen::SparseMatrix<double> J(N, N);
    J.setFromTriplets(trip.begin(), trip.end());
    return J;
}

SystemState newton_iterate(SystemState state, const NewtonOptions& opts) {
    if (!(opts.tol > 0.0)) throw PreconditionError("newton: tol must be positive");
    const int m = state.cfg.m();
    const auto K = assemble_stiffness(*state.mesh);
    if (state.ansatz_norm <= 0.0) state.ansatz_norm = h1_total(state.u);
    const double target = opts.tol * state.ansatz_norm;

    // Symmetric scaling by the stiffness diagonal keeps the LU well balanced.
    Eigen::VectorXd scale(static_cast<Eigen::Index>(K.size() * m));
    for (std::size_t p = 0; p < K.size(); ++p) {
        for (int i = 0; i < m; ++i) scale[static_cast<Eigen::Index>(p * m + i)] = 1.0 / std::sqrt(K.diag[p]);
    }

    auto res = assemble_residual(state);
    int short_steps = 0;
    state.strategy = "newton";
    state.trace.clear();
    state.trace.push_back({0, res.residual_h1, 0.0});
    state.converged = res.residual_h1 < target;
    int it = 0;
    while (!state.converged) {
        if (it >= opts.max_iters) {
            throw NonConvergenceError("newton: no convergence within " + std::to_string(opts.max_iters) +
                                          " iterations (residual " + std::to_string(res.residual_h1) + ")",
                                      state.trace);
        }
        ++it;
        Eigen::SparseMatrix<double> J = scale.asDiagonal() * assemble_jacobian(state) * scale.asDiagonal();
        J.makeCompressed();
        Eigen::VectorXd rhs = -scale.cwiseProduct(pack(res.F));
        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
        lu.compute(J);
        if (lu.info() != Eigen::Success) {
            Eigen::SparseMatrix<double> shift(J.rows(), J.cols());
            shift.setIdentity();
            J += opts.regularization * shift;
            lu.compute(J);
            if (lu.info() != Eigen::Success) throw NonConvergenceError("newton: singular Jacobian", state.trace);
        }
        const Eigen::VectorXd dx = scale.cwiseProduct(lu.solve(rhs));
        const Eigen::VectorXd x0 = pack(state.u);

        double t = 1.0;
        SystemState trial = state;
        ResidualResult trial_res;
        while (true) {
            trial.u = unpack(state.mesh, m, x0 + t * dx);
            trial_res = assemble_residual(trial);
            if (trial_res.residual_h1 <= (1.0 - opts.armijo * t) * res.residual_h1) break;
            t *= 0.5;
            if (t < opts.min_step) {
                throw NonConvergenceError("newton: line search failed at iteration " + std::to_string(it),
                                          state.trace);
            }
        }
        state.u = std::move(trial.u);
        res = std::move(trial_res);
        state.trace.push_back({it, res.residual_h1, t});
        short_steps = t <= opts.stall_step ? short_steps + 1 : 0;
        if (opts.strategy == NewtonStrategy::Automatic && short_steps >= opts.stall_iters) {
            throw NonConvergenceError("newton: line search stalled at iteration " + std::to_string(it),
                                      state.trace);
        }
        state.converged = res.residual_h1 < target;
    }
    state.newton_iters = it;
    state.residual_h1 = res.residual_h1;

    for (int i = 0; i < m; ++i) {
        const auto& v = state.u[i].values;
        for (std::size_t n = 1; n + 1 < v.size(); ++n) {
            if (!(v[n] > 0.0)) {
                throw PositivityError("newton: converged solution is not positive", i, state.mesh->nodes[n], v[n]);
            }
        }
    }
    return state;
}

SystemState newton_solve(const TowerConfig& cfg, int points_per_decade, const NewtonOptions& opts,
                         const std::vector<double>* initial_d) {
    const auto mesh = solver_mesh(cfg, points_per_decade);
    const auto& d = initial_d ? *initial_d : cfg.d;
    if (opts.strategy == NewtonStrategy::Reduced) {
        return reduced_solve(cfg, mesh, rate_schedule(cfg.eps, d).deltas, opts);
    }
    auto state = tower_ansatz(cfg, mesh, d);
    if (opts.strategy == NewtonStrategy::Direct) return newton_iterate(std::move(state), opts);
    try {
        return newton_iterate(std::move(state), opts);
    } catch (const NonConvergenceError&) {
    } catch (const PositivityError&) {
    }
    return reduced_solve(cfg, mesh, rate_schedule(cfg.eps, d).deltas, opts);
}

}  // namespace fountain
