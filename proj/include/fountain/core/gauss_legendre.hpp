#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace fountain {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached n-point rule (n in [1, 64]); nodes by Newton iteration on P_n.
const GaussRule& gauss_legendre(int n);

/// Integrates f over [a, b] with the n-point rule.
template <class F>
double gauss_integrate(F&& f, double a, double b, const GaussRule& rule) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    double sum = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        sum += rule.weights[q] * f(mid + half * rule.nodes[q]);
    }
    return half * sum;
}

/// Composite rule in t = log r with `per_decade` panels per decade:
/// returns int_a^b f(r) dr.
template <class F>
double log_panel_integrate(F&& f, double a, double b, int per_decade, const GaussRule& rule) {
    const double ta = std::log(a);
    const double tb = std::log(b);
    const int panels = std::max(1, static_cast<int>(std::ceil((tb - ta) / std::log(10.0) * per_decade)));
    const double h = (tb - ta) / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double t0 = ta + p * h;
        sum += gauss_integrate(
            [&](double t) {
                const double r = std::exp(t);
                return f(r) * r;
            },
            t0, t0 + h, rule);
    }
    return sum;
}

}  // namespace fountain
