#pragma once

#include <Eigen/SparseCore>
#include <string>
#include <vector>

#include "fountain/core/error.hpp"
#include "fountain/core/tower_config.hpp"
#include "fountain/solver/fem.hpp"

namespace fountain {

/// Desk-scale envelope; runs outside it are refused with EnvelopeError.
inline constexpr int kMaxBubbles = 4;
inline constexpr double kMinEps = 1e-9;
inline constexpr int kMaxPointsPerDecade = 256;

/// Direct: damped Newton on the full system only.
/// Reduced: Lyapunov-Schmidt continuation (projected Newton for the corrector,
///   outer Newton on the concentration scales), then a full Newton polish.
/// Automatic: Direct, falling back to Reduced when the line search stalls.
enum class NewtonStrategy { Direct, Reduced, Automatic };

struct NewtonOptions {
    double tol = 1e-10;             ///< on residual_h1 relative to the ansatz H^1 norm
    int max_iters = 50;
    NewtonStrategy strategy = NewtonStrategy::Automatic;
    int stall_iters = 3;            ///< consecutive short steps that count as a stall
    double stall_step = 1.0 / 16.0; ///< step length regarded as short
    double min_step = 0x1p-20;      ///< backtracking floor
    double armijo = 1e-4;           ///< required relative decrease per unit step
    double regularization = 1e-12;  ///< diagonal shift (relative) if factorisation fails
};

/// Discrete state of the m-component radial system.
struct SystemState {
    TowerConfig cfg;
    MeshPtr mesh;
    std::vector<RadialGridFunction> u;  ///< one per component, zero trace
    double residual_h1 = 0.0;
    double ansatz_norm = 0.0;
    int newton_iters = 0;
    bool converged = false;
    std::string strategy;               ///< "newton" or "reduced+newton"
    std::vector<NewtonTraceEntry> trace;
};

struct ResidualResult {
    std::vector<RadialGridFunction> F;  ///< weak residual at nodes (zero at boundary nodes)
    double residual_h1 = 0.0;           ///< sqrt(sum_i F_i^T K^{-1} F_i)
};

/// Throws EnvelopeError if the configuration lies outside the desk-scale envelope.
void check_envelope(const TowerConfig& cfg, int points_per_decade);

/// The mesh a solve at cfg uses: graded around the schedule of cfg.d.
MeshPtr solver_mesh(const TowerConfig& cfg, int points_per_decade);

/// u_i = mu_i^{-1/2} sum_{j in I_i} P_h U_{delta_j} with deltas from `d` at cfg.eps.
SystemState tower_ansatz(const TowerConfig& cfg, const MeshPtr& mesh, const std::vector<double>& d);

/// Same ansatz with explicit concentration scales delta_1..delta_k.
SystemState tower_ansatz_at(const TowerConfig& cfg, const MeshPtr& mesh, const std::vector<double>& deltas);

/// F_i(u) = K u_i - load(mu_i f(u_i) + u_i sum_{j != i} beta_ij u_j^2), f(s) = (s^+)^3.
ResidualResult assemble_residual(const SystemState& state);

/// Jacobian of the interior residual; unknowns ordered node-major
/// (index = interior_node * m + component).
Eigen::SparseMatrix<double> assemble_jacobian(const SystemState& state);

/// Damped Newton from the tower ansatz at d = cfg.d (or at `initial_d` when given).
SystemState newton_solve(const TowerConfig& cfg, int points_per_decade, const NewtonOptions& opts = {},
                         const std::vector<double>* initial_d = nullptr);

/// Damped Newton from an explicit initial state (Direct strategy only).
SystemState newton_iterate(SystemState state, const NewtonOptions& opts);

/// Lyapunov-Schmidt solve starting from the ansatz at `deltas`, finished by a
/// full Newton polish. Used by newton_solve for the Reduced strategy.
SystemState reduced_solve(const TowerConfig& cfg, const MeshPtr& mesh, std::vector<double> deltas,
                          const NewtonOptions& opts);

/// Interleaves component values at interior nodes into one vector and back.
Eigen::VectorXd pack(const std::vector<RadialGridFunction>& u);
std::vector<RadialGridFunction> unpack(const MeshPtr& mesh, int m, const Eigen::VectorXd& x);

}  // namespace fountain
