#include <Eigen/Dense>
#include <Eigen/SparseLU>
#include <cmath>
#include <string>

#include "fountain/solver/system.hpp"

namespace fountain {

namespace {

// The corrector problem at fixed scales: find phi and multipliers lambda with
//   F(A(delta) + phi) + C lambda = 0,   C^T phi = 0,
// where the columns of C are K * (normalised P_h psi_j) in the component that
// owns bubble j, so C^T phi collects <phi_i, P psi_j>_{H^1}. lambda = 0 is the
// remaining (reduced) equation for the scales.
class CorrectorProblem {
public:
    CorrectorProblem(const TowerConfig& cfg, const MeshPtr& mesh, double tol)
        : cfg_(cfg), mesh_(mesh), K_(assemble_stiffness(*mesh)), owner_(component_of_bubble(cfg.partition)),
          tol_(tol) {
        const int m = cfg.m();
        scale_.resize(static_cast<Eigen::Index>(K_.size() * m));
        for (std::size_t p = 0; p < K_.size(); ++p) {
            for (int i = 0; i < m; ++i) scale_[static_cast<Eigen::Index>(p * m + i)] = 1.0 / std::sqrt(K_.diag[p]);
        }
    }

    struct Result {
        SystemState state;
        Eigen::VectorXd lambda;
        Eigen::VectorXd phi;
        double residual = 0.0;  // H^1 dual norm of F(u)
        int iterations = 0;
    };

    Result solve(const std::vector<double>& deltas, const Eigen::VectorXd& phi0, double reference_norm) const {
        const int m = cfg_.m();
        const int k = cfg_.k();
        const SystemState ansatz = tower_ansatz_at(cfg_, mesh_, deltas);
        const Eigen::VectorXd a = pack(ansatz.u);
        const auto N = a.size();

        Eigen::MatrixXd C = Eigen::MatrixXd::Zero(N, k);
        for (int j = 0; j < k; ++j) {
            const auto psi = discrete_projected_dbubble(mesh_, deltas[j]);
            const double nrm = h1_norm(psi);
            const auto kpsi = K_.apply(to_interior(psi));
            for (std::size_t p = 0; p < kpsi.size(); ++p) {
                C(static_cast<Eigen::Index>(p * m + owner_[j]), j) = kpsi[p] / nrm;
            }
        }

        Result out;
        out.state = ansatz;
        Eigen::VectorXd phi = phi0.size() == N ? phi0 : Eigen::VectorXd::Zero(N);
        Eigen::VectorXd lambda = Eigen::VectorXd::Zero(k);
        out.state.u = unpack(mesh_, m, a + phi);
        auto res = assemble_residual(out.state);
        // Start from the least-squares multipliers so the first merit value is fair.
        lambda = -(C.transpose() * C).ldlt().solve(C.transpose() * pack(res.F));

        auto merit = [&](const ResidualResult& r, const Eigen::VectorXd& ph, const Eigen::VectorXd& lam) {
            const Eigen::VectorXd g1 = pack(r.F) + C * lam;
            double s = 0.0;
            for (const auto& comp : unpack(mesh_, m, g1)) {
                const double rn = riesz_norm(K_, to_interior(comp));
                s += rn * rn;
            }
            return std::sqrt(s + (C.transpose() * ph).squaredNorm());
        };

        double g = merit(res, phi, lambda);
        const double target = tol_ * reference_norm;
        int it = 0;
        for (; it < 40 && g >= target; ++it) {
            const Eigen::SparseMatrix<double> J = assemble_jacobian(out.state);
            Eigen::SparseMatrix<double> Bm(N + k, N + k);
            std::vector<Eigen::Triplet<double>> trip;
            trip.reserve(static_cast<std::size_t>(J.nonZeros() + 2 * N * k / m + 16));
            for (Eigen::Index c = 0; c < J.outerSize(); ++c) {
                for (Eigen::SparseMatrix<double>::InnerIterator itj(J, c); itj; ++itj) {
                    trip.emplace_back(itj.row(), itj.col(), scale_[itj.row()] * itj.value() * scale_[itj.col()]);
                }
            }
            for (int j = 0; j < k; ++j) {
                for (Eigen::Index r = 0; r < N; ++r) {
                    if (C(r, j) == 0.0) continue;
                    trip.emplace_back(r, N + j, scale_[r] * C(r, j));
                    trip.emplace_back(N + j, r, scale_[r] * C(r, j));
                }
            }
            Bm.setFromTriplets(trip.begin(), trip.end());
            Bm.makeCompressed();
            Eigen::VectorXd rhs(N + k);
            rhs.head(N) = -scale_.cwiseProduct(pack(res.F) + C * lambda);
            rhs.tail(k) = -(C.transpose() * phi);
            Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
            lu.compute(Bm);
            if (lu.info() != Eigen::Success) throw NonConvergenceError("corrector: singular bordered system", {});
            const Eigen::VectorXd z = lu.solve(rhs);
            const Eigen::VectorXd dphi = scale_.cwiseProduct(z.head(N));
            const Eigen::VectorXd dlam = z.tail(k);

            double t = 1.0;
            while (true) {
                const Eigen::VectorXd phi_t = phi + t * dphi;
                const Eigen::VectorXd lam_t = lambda + t * dlam;
                SystemState trial = out.state;
                trial.u = unpack(mesh_, m, a + phi_t);
                auto trial_res = assemble_residual(trial);
                const double gt = merit(trial_res, phi_t, lam_t);
                if (gt <= (1.0 - 1e-4 * t) * g) {
                    phi = phi_t;
                    lambda = lam_t;
                    out.state = std::move(trial);
                    res = std::move(trial_res);
                    g = gt;
                    break;
                }
                t *= 0.5;
                if (t < 0x1p-20) throw NonConvergenceError("corrector: line search failed", {});
            }
        }
        if (g >= target) throw NonConvergenceError("corrector: no convergence", {});
        out.lambda = lambda;
        out.phi = phi;
        out.residual = res.residual_h1;
        out.iterations = it;
        return out;
    }

private:
    TowerConfig cfg_;
    MeshPtr mesh_;
    Stiffness K_;
    std::vector<int> owner_;
    double tol_;
    Eigen::VectorXd scale_;
};

}  // namespace

SystemState reduced_solve(const TowerConfig& cfg, const MeshPtr& mesh, std::vector<double> deltas,
                          const NewtonOptions& opts) {
    const int k = cfg.k();
    const double reference = tower_ansatz_at(cfg, mesh, deltas).ansatz_norm;
    const CorrectorProblem problem(cfg, mesh, 1e-2 * opts.tol);
    const double target = opts.tol * reference;
    constexpr double kLogStep = 1e-4;

    std::vector<NewtonTraceEntry> trace;
    Eigen::VectorXd y(k);
    for (int j = 0; j < k; ++j) y[j] = std::log(deltas[j]);
    auto at = [&](const Eigen::VectorXd& yy) {
        std::vector<double> dl(k);
        for (int j = 0; j < k; ++j) dl[j] = std::exp(yy[j]);
        return dl;
    };

    auto cur = problem.solve(at(y), {}, reference);
    trace.push_back({0, cur.residual, 0.0});
    int outer = 0;
    for (; outer < 30 && cur.residual >= target; ++outer) {
        Eigen::MatrixXd Jl(k, k);
        for (int j = 0; j < k; ++j) {
            Eigen::VectorXd yp = y, ym = y;
            yp[j] += kLogStep;
            ym[j] -= kLogStep;
            const auto lp = problem.solve(at(yp), cur.phi, reference).lambda;
            const auto lm = problem.solve(at(ym), cur.phi, reference).lambda;
            Jl.col(j) = (lp - lm) / (2.0 * kLogStep);
        }
        const Eigen::VectorXd dy = -Jl.fullPivLu().solve(cur.lambda);
        double t = 1.0;
        while (true) {
            const Eigen::VectorXd yt = y + t * dy;
            bool ordered = true;
            for (int j = 0; j + 1 < k; ++j) ordered = ordered && yt[j + 1] < yt[j];
            if (ordered && std::exp(yt[k - 1]) > cfg.eps && std::exp(yt[0]) < cfg.R) {
                try {
                    auto trial = problem.solve(at(yt), cur.phi, reference);
                    if (trial.lambda.norm() <= (1.0 - 1e-4 * t) * cur.lambda.norm() || trial.residual < target) {
                        y = yt;
                        cur = std::move(trial);
                        break;
                    }
                } catch (const NonConvergenceError&) {
                }
            }
            t *= 0.5;
            if (t < 0x1p-12) throw NonConvergenceError("reduced solve: scale update failed", trace);
        }
        trace.push_back({outer + 1, cur.residual, t});
    }

    NewtonOptions polish = opts;
    polish.strategy = NewtonStrategy::Direct;
    SystemState state = cur.state;
    state.ansatz_norm = reference;
    state = newton_iterate(std::move(state), polish);
    for (auto e : state.trace) {
        e.iteration += outer;
        if (e.iteration > outer) trace.push_back(e);
    }
    state.trace = std::move(trace);
    state.newton_iters += outer;
    state.strategy = "reduced+newton";
    return state;
}

}  // namespace fountain
