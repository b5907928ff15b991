#pragma once

#include <vector>

#include "fountain/core/tower_config.hpp"

namespace fountain {

/// Default resolution of every quadrature in this module.
inline constexpr int kLabPointsPerDecade = 64;

struct SingleEnergy {
    double measured = 0.0;  ///< int 1/2 |grad P U|^2 - 1/4 (P U)^4 over the annulus
    double model = 0.0;     ///< B/4 + (A^2 tau(0)/2) delta^2 + (Gamma/2) (eps/delta)^2
    double ratio = 0.0;     ///< (measured - B/4) / (model - B/4)
};

SingleEnergy single_bubble_energy(double delta, double eps, double R, int ppd = kLabPointsPerDecade);

/// int_{Omega_eps} U_a^2 U_b^2 for any two scales (symmetric in a, b).
double interaction_integral(double delta_a, double delta_b, double eps, double R, int ppd = kLabPointsPerDecade);

struct PairInteraction {
    double measured = 0.0;
    double model = 0.0;  ///< 128 pi^2 (delta_i/delta_j)^2 log(delta_j/delta_i)
    double ratio = 0.0;
};

/// Requires eps < delta_i < delta_j < R.
PairInteraction interaction_pair(double delta_i, double delta_j, double eps, double R, int ppd = kLabPointsPerDecade);

struct ProjectedPairInteraction {
    double projected = 0.0;
    double unprojected = 0.0;
    double model = 0.0;
    double relative_gap = 0.0;  ///< |projected - unprojected| / model
};

ProjectedPairInteraction projected_interaction_pair(double delta_i, double delta_j, double eps, double R,
                                                    int ppd = kLabPointsPerDecade);

/// int_{B_R} U_delta^q (the hole is irrelevant for this estimate).
double lq_bubble_norm(double delta, double q, double R, int ppd = kLabPointsPerDecade);

struct MixedInteraction {
    double forward = 0.0;  ///< int U_{rho1}^p U_{rho2}^q
    double reverse = 0.0;  ///< int U_{rho2}^p U_{rho1}^q
};

/// Requires p + q = 4, 1 < q < 2 < p, eps < rho2 < rho1 < R.
MixedInteraction mixed_pq_interaction(double rho1, double rho2, double p, double q, double eps, double R,
                                      int ppd = kLabPointsPerDecade);

/// int (U_{rho1} U_{rho2} U_{rho3})^{4/3}; requires eps < rho3 < rho2 < rho1 < R.
double triple_interaction(double rho1, double rho2, double rho3, double eps, double R,
                          int ppd = kLabPointsPerDecade);

/// int U^2 (P U - U)^2 over the annulus; requires eps < delta < R.
double projection_l2_error(double delta, double eps, double R, int ppd = kLabPointsPerDecade);

struct RemainderNorm {
    std::vector<double> per_component;  ///< ||R_i||_{H^1}
    double total = 0.0;                 ///< sqrt of the sum of squares
    double rate = 0.0;                  ///< eps^{1/(k+1)} (log 1/eps)^{-1/(k+1)}
    double gram_condition = 1.0;        ///< worst per-component Gram condition
};

/// H^1 norm of the projected defect of the tower ansatz with scales from cfg.d:
///   R_i = Pi_i^perp I*[ mu_i f(u_i) - mu_i^{-1/2} sum_{l in I_i} f(U_l) + u_i sum_{j != i} beta_ij u_j^2 ],
/// u_i = mu_i^{-1/2} sum_{l in I_i} P_eps U_l, f(s) = (s^+)^3. Pi_i^perp removes the
/// span of the closed-form P psi_l (l in I_i) in H^1. Throws ConditioningError if
/// a Gram matrix has condition above 1e12.
RemainderNorm remainder_norm(const TowerConfig& cfg, int ppd = kLabPointsPerDecade);

}  // namespace fountain
