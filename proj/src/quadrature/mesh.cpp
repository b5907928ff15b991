#include "fountain/quadrature/mesh.hpp"

#include <algorithm>
#include <cmath>

#include "fountain/core/error.hpp"

namespace fountain {

namespace {

constexpr double kMargin = 1.5;  // decades of full refinement beyond the extreme scales
constexpr double kRamp = 1.0;    // decades over which the refinement switches on

// Node density (per decade of t = log10 r): a uniform base plus a refinement
// plateau covering all scales with linear ramps at both ends. Inside the
// plateau the mesh is exactly geometric, so the discrete problem is
// dilation-invariant near every bubble and moving a bubble does not change
// its discretisation error.
struct Density {
    double base = 0.0;
    double extra = 0.0;
    double left = 0.0;
    double right = 0.0;
    bool refined = false;

    double ramp_integral(double t) const {
        if (!refined) return 0.0;
        const double a = left - kRamp;
        const double b = right + kRamp;
        if (t <= a) return 0.0;
        if (t <= left) return 0.5 * (t - a) * (t - a) / kRamp;
        if (t <= right) return 0.5 * kRamp + (t - left);
        if (t <= b) {
            const double x = t - right;
            return 0.5 * kRamp + (right - left) + x - 0.5 * x * x / kRamp;
        }
        return kRamp + (right - left);
    }

    double cumulative(double t0, double t) const {
        return base * (t - t0) + extra * (ramp_integral(t) - ramp_integral(t0));
    }
};

}  // namespace

MeshPtr build_mesh(double eps, double R, const std::vector<double>& scales, int points_per_decade) {
    if (!(eps > 0.0) || !(eps < R)) throw PreconditionError("build_mesh: requires 0 < eps < R");
    if (points_per_decade < 2) throw PreconditionError("build_mesh: points_per_decade must be at least 2");
    for (double s : scales) {
        if (!(s > eps) || !(s < R)) throw PreconditionError("build_mesh: scale outside (eps, R)");
    }
    Density rho;
    rho.base = points_per_decade + 1.0;
    rho.extra = points_per_decade;
    if (!scales.empty()) {
        const auto [lo, hi] = std::minmax_element(scales.begin(), scales.end());
        rho.refined = true;
        rho.left = std::log10(*lo) - kMargin;
        rho.right = std::log10(*hi) + kMargin;
    }

    const double t0 = std::log10(eps);
    const double t1 = std::log10(R);
    const double total = rho.cumulative(t0, t1);
    const auto n = static_cast<std::size_t>(std::ceil(total));

    auto mesh = std::make_shared<GradedMesh>();
    mesh->scales = scales;
    mesh->points_per_decade = points_per_decade;
    mesh->nodes.resize(n + 1);
    mesh->nodes.front() = eps;
    mesh->nodes.back() = R;
    // The cumulative density is strictly increasing; invert it by bisection
    // bracketed between the previous node and t1.
    double lo_prev = t0;
    for (std::size_t i = 1; i < n; ++i) {
        const double target = total * static_cast<double>(i) / static_cast<double>(n);
        double lo = lo_prev;
        double hi = t1;
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (rho.cumulative(t0, mid) < target) lo = mid; else hi = mid;
        }
        const double t = 0.5 * (lo + hi);
        mesh->nodes[i] = std::pow(10.0, t);
        lo_prev = t;
    }
    for (std::size_t i = 1; i < mesh->nodes.size(); ++i) {
        if (!(mesh->nodes[i] > mesh->nodes[i - 1])) {
            throw PreconditionError("build_mesh: nodes not strictly increasing (mesh too fine)");
        }
    }
    return mesh;
}

std::size_t nodes_in(const GradedMesh& mesh, double a, double b) {
    const auto lo = std::lower_bound(mesh.nodes.begin(), mesh.nodes.end(), a);
    const auto hi = std::upper_bound(mesh.nodes.begin(), mesh.nodes.end(), b);
    return hi > lo ? static_cast<std::size_t>(hi - lo) : 0;
}

}  // namespace fountain
