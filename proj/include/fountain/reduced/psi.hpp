#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fountain/asymptotics/fit.hpp"
#include "fountain/core/tower_config.hpp"

namespace fountain {

/// Psi(x) = a1 x_1 + a2 / x_k + a3 sum_{i<k} x_{i+1} / x_i.
struct PsiCoefficients {
    double a1 = 0.0;
    double a2 = 0.0;
    double a3 = 0.0;
    int k = 1;
};

/// a1 = A^2 tau(0) / 2, a2 = Gamma / 2, a3 = |beta| alpha4^4 |S^3| / (2 (k+1)).
/// Requires beta < 0 when k > 1 (otherwise a3 = 0 and Psi has no minimiser in x_1).
PsiCoefficients psi_coefficients(int k, double beta, double R);

double psi_eval(const PsiCoefficients& c, const std::vector<double>& x);
std::vector<double> psi_grad(const PsiCoefficients& c, const std::vector<double>& x);
Eigen::MatrixXd psi_hess(const PsiCoefficients& c, const std::vector<double>& x);

struct ClosedFormMinimizer {
    std::vector<double> x;          ///< x_i* = (a2/a3)^{i/(k+1)} (a3/a1)^{(k+1-i)/(k+1)}
    std::vector<double> d;          ///< sqrt(x*)
    std::vector<double> d_theorem;  ///< the main theorem's expression for d_j*
    double max_relative_gap = 0.0;  ///< between d and d_theorem
    double psi_value = 0.0;
};

/// Throws std::logic_error if the two expressions disagree beyond 1e-12.
ClosedFormMinimizer minimizer_closed_form(const PsiCoefficients& c);

struct ReducedPoint {
    std::vector<double> x;
    double psi_value = 0.0;
    std::vector<double> gradient;
    double hessian_min_eigenvalue = 0.0;
    int iterations = 0;
};

/// Damped Newton on y = log x (Psi is convex in y) until the y-gradient is
/// below 1e-12 Psi. Throws NonConvergenceError after 200 iterations.
ReducedPoint psi_minimize_numeric(const PsiCoefficients& c, const std::vector<double>& x0);

struct ReducedEnergy {
    double value = 0.0;     ///< J_eps at the pure tower ansatz
    double gradient = 0.0;  ///< sum_i int 1/2 |grad u_i|^2
    double quartic = 0.0;   ///< sum_i mu_i/4 int (u_i^+)^4
    double coupling = 0.0;  ///< -sum_{i<j} (beta_ij/2) int u_i^2 u_j^2
};

/// J_eps(u) = sum_i int (1/2 |grad u_i|^2 - mu_i/4 (u_i^+)^4) - sum_{i<j} (beta_ij/2) int u_i^2 u_j^2
/// at u_i = mu_i^{-1/2} sum_{l in I_i} P_eps U_{delta_l}, deltas from cfg.d, closed-form
/// integrands with Gauss quadrature on a graded mesh.
ReducedEnergy reduced_energy_eval(const TowerConfig& cfg, int ppd = 64);

/// [J - k B/4] / [eps^{2/(k+1)} (log 1/eps)^{(k-1)/(k+1)}] at every eps, compared
/// with the limit Psi(d_1^2, ..., d_k^2) (for m = 1, k = 1: a1 d^2 + a2 / d^2).
/// Passes when the smallest-eps ratio is within `tolerance` of the limit and
/// strictly closer than at the largest eps.
AsymptoticReport expansion_check(const TowerConfig& cfg, const std::vector<double>& eps_list, int ppd = 64,
                                 double tolerance = 0.10);

}  // namespace fountain
