#pragma once

namespace fountain {

/// Aubin-Talenti bubble centred at the origin of R^4:
/// U_delta(r) = alpha4 * delta / (delta^2 + r^2).
struct Bubble {
    double delta = 1.0;

    double value(double r) const;
    /// dU/dr.
    double radial_derivative(double r) const;
    /// psi = dU/d(delta) = alpha4 (r^2 - delta^2) / (delta^2 + r^2)^2.
    double delta_derivative(double r) const;
    /// d(psi)/dr.
    double delta_derivative_radial(double r) const;
};

/// Throws PreconditionError unless delta > 0.
Bubble make_bubble(double delta);

double bubble_eval(const Bubble& b, double r);
double dbubble_eval(const Bubble& b, double r);

/// Radial harmonic function h(r) = c1 + c2 / r^2 on an annulus in R^4.
struct RadialHarmonic {
    double c1 = 0.0;
    double c2 = 0.0;

    double value(double r) const { return c1 + c2 / (r * r); }
    double radial_derivative(double r) const { return -2.0 * c2 / (r * r * r); }
};

/// The unique radial harmonic function with h(eps) = inner and h(R) = outer.
RadialHarmonic harmonic_matching(double eps, double R, double inner, double outer);

/// P_eps U = U - h, with h harmonic and equal to U on both boundary spheres.
struct ProjectedBubble {
    Bubble bubble;
    double eps = 0.0;
    double R = 1.0;
    double c1 = 0.0;
    double c2 = 0.0;

    double value(double r) const;
    double radial_derivative(double r) const;
    double operator()(double r) const { return value(r); }
};

/// P_eps psi = psi - h, with h harmonic and equal to psi on both boundaries.
struct ProjectedDBubble {
    Bubble bubble;
    double eps = 0.0;
    double R = 1.0;
    double c1 = 0.0;
    double c2 = 0.0;

    double value(double r) const;
    double radial_derivative(double r) const;
    double operator()(double r) const { return value(r); }
};

ProjectedBubble project_bubble(const Bubble& b, double eps, double R);
ProjectedDBubble project_dbubble(const Bubble& b, double eps, double R);

struct ExpansionResidual {
    double max_abs = 0.0;  ///< sup over [2 eps, R] of the remainder
    double argmax = 0.0;   ///< radius where it is attained
};

/// Remainder of the small-hole expansion
///   P_eps U = U - A delta H(0,0) - (alpha4/delta)(eps/r)^2 + R(r)
/// on the ball, where A H(0,0) = alpha4 / R^2. Sampled on 4000 log-spaced
/// radii over [2 eps, R].
ExpansionResidual projection_expansion_error(const Bubble& b, double eps, double R);

}  // namespace fountain
