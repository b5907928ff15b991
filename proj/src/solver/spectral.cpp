#include "fountain/solver/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>

#include "fountain/core/bubble.hpp"

namespace fountain {

namespace {

double smallest_abs_eigenvalue(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(A, B, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw ConditioningError("sigma_min: generalized eigensolver failed", INFINITY);
    return es.eigenvalues().cwiseAbs().minCoeff();
}

}  // namespace

SigmaMinReport projected_linearization_sigma_min(const SystemState& state, const std::vector<double>& deltas) {
    const auto& cfg = state.cfg;
    const int m = cfg.m();
    const int k = cfg.k();
    if (static_cast<int>(deltas.size()) != k) throw PreconditionError("sigma_min: need one scale per bubble");
    const auto owner = component_of_bubble(cfg.partition);
    const auto K = assemble_stiffness(*state.mesh);
    const auto n = static_cast<Eigen::Index>(K.size());
    const Eigen::Index N = n * m;

    Eigen::MatrixXd Q = Eigen::MatrixXd(assemble_jacobian(state));
    Q = 0.5 * (Q + Q.transpose());
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(N, N);
    Eigen::VectorXd D(N);
    for (Eigen::Index p = 0; p < n; ++p) {
        for (int i = 0; i < m; ++i) {
            const Eigen::Index a = p * m + i;
            S(a, a) = K.diag[p];
            if (p + 1 < n) {
                S(a, a + m) = K.off[p];
                S(a + m, a) = K.off[p];
            }
            D[a] = 1.0 / std::sqrt(K.diag[p]);
        }
    }
    Q = D.asDiagonal() * Q * D.asDiagonal();
    S = D.asDiagonal() * S * D.asDiagonal();

    // Kernel directions and their H^1 Gram matrix.
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(N, k);
    std::vector<RadialGridFunction> psi;
    for (int j = 0; j < k; ++j) {
        psi.push_back(sample(state.mesh, project_dbubble(Bubble{deltas[j]}, cfg.eps, cfg.R)));
        const double nrm = h1_norm(psi.back());
        for (double& v : psi.back().values) v /= nrm;
    }
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(k, k);
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
            if (owner[a] == owner[b]) G(a, b) = h1_inner(psi[a], psi[b]);
        }
    }
    const Eigen::VectorXd gev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(G).eigenvalues();
    SigmaMinReport out;
    out.deltas = deltas;
    out.gram_condition = gev.maxCoeff() / std::max(gev.minCoeff(), 1e-300);
    if (!(out.gram_condition <= 1e12)) {
        throw ConditioningError("sigma_min: kernel Gram matrix too ill-conditioned", out.gram_condition);
    }
    for (int j = 0; j < k; ++j) {
        const auto kpsi = K.apply(to_interior(psi[j]));
        for (Eigen::Index p = 0; p < n; ++p) C(p * m + owner[j], j) = D[p * m + owner[j]] * kpsi[static_cast<std::size_t>(p)];
    }

    out.unprojected = smallest_abs_eigenvalue(Q, S);

    // Orthonormal basis of {x : C^T x = 0} from a full Householder QR of C.
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(C);
    const Eigen::MatrixXd Qfull = qr.householderQ();
    const Eigen::MatrixXd Z = Qfull.rightCols(N - k);
    const Eigen::MatrixXd Qz = Z.transpose() * Q * Z;
    const Eigen::MatrixXd Sz = Z.transpose() * S * Z;
    out.projected = smallest_abs_eigenvalue(0.5 * (Qz + Qz.transpose()), 0.5 * (Sz + Sz.transpose()));
    return out;
}

}  // namespace fountain
