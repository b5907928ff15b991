#include "fountain/core/constants.hpp"

#include <cmath>

#include "fountain/core/error.hpp"
#include "fountain/core/gauss_legendre.hpp"

namespace fountain {

namespace {

constexpr double kHead = 1e-8;
constexpr double kTail = 1e6;

// int_0^inf g(r) dr where g(r) ~ c0 r^p0 near 0 and g(r) ~ sum_i c_i r^{-q_i} at
// infinity; the truncated pieces are added analytically.
struct PowerTerm {
    double coeff;
    double power;
};

template <class F>
double whole_line(F&& g, PowerTerm head, std::initializer_list<PowerTerm> tail) {
    const auto& rule = gauss_legendre(10);
    double value = log_panel_integrate(g, kHead, kTail, 32, rule);
    value += head.coeff * std::pow(kHead, head.power + 1.0) / (head.power + 1.0);
    for (const auto& t : tail) {
        // int_T^inf c r^{-q} dr = c T^{1-q} / (q-1)
        value += t.coeff * std::pow(kTail, 1.0 - t.power) / (t.power - 1.0);
    }
    return value;
}

}  // namespace

UniversalConstants compute_constants() {
    UniversalConstants c;
    const double a = kAlpha4;
    const double a3 = a * a * a;
    const double a4 = a3 * a;

    // r^3/(1+r^2)^3 = r^-3 - 3 r^-5 + O(r^-7)
    const double iA = whole_line([](double r) { return std::pow(r, 3) / std::pow(1.0 + r * r, 3); },
                                 {1.0, 3.0}, {{1.0, 3.0}, {-3.0, 5.0}});
    // r^3/(1+r^2)^4 = r^-5 - 4 r^-7
    const double iB = whole_line([](double r) { return std::pow(r, 3) / std::pow(1.0 + r * r, 4); },
                                 {1.0, 3.0}, {{1.0, 5.0}, {-4.0, 7.0}});
    // r/(1+r^2)^3 = r^-5 - 3 r^-7
    const double iG = whole_line([](double r) { return r / std::pow(1.0 + r * r, 3); },
                                 {1.0, 1.0}, {{1.0, 5.0}, {-3.0, 7.0}});

    c.A = kSphere3Area * a3 * iA;
    c.B = kSphere3Area * a4 * iB;
    c.Gamma = kSphere3Area * a4 * iG;
    c.interaction_const = a4 * kSphere3Area;
    return c;
}

double robin_ball_center(double R) {
    if (!(R > 0.0)) throw PreconditionError("robin_ball_center: R must be positive");
    return kGamma4 / (R * R);
}

}  // namespace fountain
