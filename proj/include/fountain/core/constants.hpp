#pragma once

#include <numbers>

namespace fountain {

inline constexpr double kPi = std::numbers::pi;

/// Normalisation of the four-dimensional bubble, 2*sqrt(2).
inline constexpr double kAlpha4 = 2.0 * std::numbers::sqrt2;

/// Area of the unit 3-sphere in R^4.
inline constexpr double kSphere3Area = 2.0 * kPi * kPi;

/// Coefficient of the fundamental solution of -Laplace in R^4: gamma4 / |x|^2.
inline constexpr double kGamma4 = 1.0 / (2.0 * kSphere3Area);

/// Constants entering the bubble-tower energy expansion.
///
/// Every quantity is computed twice: by weighted radial quadrature over R^4
/// (the `*` fields) and in closed form (the `*_exact` fields), so that the
/// quadrature path is continuously cross-checked.
struct UniversalConstants {
    double alpha4 = kAlpha4;
    double sphere3_area = kSphere3Area;
    double gamma4 = kGamma4;

    double A = 0.0;      ///< int_{R^4} U_{1,0}^3
    double B = 0.0;      ///< int_{R^4} U_{1,0}^4
    double Gamma = 0.0;  ///< int_{R^4} alpha4^4 / (|y|^2 (1+|y|^2)^3)
    double interaction_const = 0.0;  ///< alpha4^4 |S^3| = 128 pi^2

    double A_exact = 8.0 * std::numbers::sqrt2 * kPi * kPi;
    double B_exact = 32.0 * kPi * kPi / 3.0;
    double Gamma_exact = 32.0 * kPi * kPi;
    double interaction_exact = 128.0 * kPi * kPi;
};

/// Evaluates A, B, Gamma by composite Gauss-Legendre quadrature on a
/// log-uniform grid over [1e-8, 1e6] with analytic head and tail corrections.
UniversalConstants compute_constants();

/// Robin function at the centre of the ball B_R: tau(0) = gamma4 / R^2.
double robin_ball_center(double R);

}  // namespace fountain
