#include "fountain/core/bubble.hpp"

#include <cmath>

#include "fountain/core/constants.hpp"
#include "fountain/core/error.hpp"

namespace fountain {

namespace {

void check_annulus(double eps, double R) {
    if (!(eps > 0.0) || !(eps < R)) {
        throw PreconditionError("annulus requires 0 < eps < R");
    }
}

}  // namespace

double Bubble::value(double r) const {
    return kAlpha4 * delta / (delta * delta + r * r);
}

double Bubble::radial_derivative(double r) const {
    const double s = delta * delta + r * r;
    return -2.0 * kAlpha4 * delta * r / (s * s);
}

double Bubble::delta_derivative(double r) const {
    const double s = delta * delta + r * r;
    return kAlpha4 * (r * r - delta * delta) / (s * s);
}

double Bubble::delta_derivative_radial(double r) const {
    // d/dr [alpha4 (r^2 - d^2) / s^2] = alpha4 * 2r (3 d^2 - r^2) / s^3
    const double s = delta * delta + r * r;
    return kAlpha4 * 2.0 * r * (3.0 * delta * delta - r * r) / (s * s * s);
}

Bubble make_bubble(double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw PreconditionError("bubble: delta must be positive and finite");
    }
    return Bubble{delta};
}

double bubble_eval(const Bubble& b, double r) {
    if (r < 0.0) throw PreconditionError("bubble_eval: r must be non-negative");
    return b.value(r);
}

double dbubble_eval(const Bubble& b, double r) {
    if (r < 0.0) throw PreconditionError("dbubble_eval: r must be non-negative");
    return b.delta_derivative(r);
}

RadialHarmonic harmonic_matching(double eps, double R, double inner, double outer) {
    check_annulus(eps, R);
    // c1 + c2/eps^2 = inner, c1 + c2/R^2 = outer.
    const double det = 1.0 / (eps * eps) - 1.0 / (R * R);
    if (!(det > 0.0)) throw PreconditionError("harmonic_matching: singular boundary system");
    RadialHarmonic h;
    h.c2 = (inner - outer) / det;
    h.c1 = outer - h.c2 / (R * R);
    return h;
}

double ProjectedBubble::value(double r) const {
    return bubble.value(r) - c1 - c2 / (r * r);
}

double ProjectedBubble::radial_derivative(double r) const {
    return bubble.radial_derivative(r) + 2.0 * c2 / (r * r * r);
}

double ProjectedDBubble::value(double r) const {
    return bubble.delta_derivative(r) - c1 - c2 / (r * r);
}

double ProjectedDBubble::radial_derivative(double r) const {
    return bubble.delta_derivative_radial(r) + 2.0 * c2 / (r * r * r);
}

ProjectedBubble project_bubble(const Bubble& b, double eps, double R) {
    const auto h = harmonic_matching(eps, R, b.value(eps), b.value(R));
    return ProjectedBubble{b, eps, R, h.c1, h.c2};
}

ProjectedDBubble project_dbubble(const Bubble& b, double eps, double R) {
    const auto h = harmonic_matching(eps, R, b.delta_derivative(eps), b.delta_derivative(R));
    return ProjectedDBubble{b, eps, R, h.c1, h.c2};
}

ExpansionResidual projection_expansion_error(const Bubble& b, double eps, double R) {
    check_annulus(eps, R);
    if (!(eps < b.delta)) throw PreconditionError("projection_expansion_error: requires eps < delta");
    const auto pu = project_bubble(b, eps, R);
    const double a_h = kAlpha4 / (R * R);  // A * gamma4 / R^2
    const double lo = std::log(2.0 * eps);
    const double hi = std::log(R);
    constexpr int kSamples = 4000;
    ExpansionResidual out;
    for (int i = 0; i <= kSamples; ++i) {
        const double r = i == 0 ? 2.0 * eps : (i == kSamples ? R : std::exp(lo + (hi - lo) * i / kSamples));
        const double model = b.value(r) - a_h * b.delta - (kAlpha4 / b.delta) * (eps / r) * (eps / r);
        const double rem = std::abs(pu.value(r) - model);
        if (rem > out.max_abs) {
            out.max_abs = rem;
            out.argmax = r;
        }
    }
    return out;
}

}  // namespace fountain
