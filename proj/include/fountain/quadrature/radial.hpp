#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "fountain/core/constants.hpp"
#include "fountain/core/error.hpp"
#include "fountain/core/gauss_legendre.hpp"
#include "fountain/quadrature/mesh.hpp"

namespace fountain {

/// A radial function sampled at the nodes of a graded mesh and interpreted as
/// piecewise linear in r.
struct RadialGridFunction {
    MeshPtr mesh;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
    /// Piecewise-linear interpolation; clamps outside [eps, R].
    double at(double r) const;
};

RadialGridFunction zeros(const MeshPtr& mesh);

template <class F>
RadialGridFunction sample(const MeshPtr& mesh, F&& f) {
    RadialGridFunction g{mesh, std::vector<double>(mesh->size())};
    for (std::size_t i = 0; i < mesh->size(); ++i) g.values[i] = f(mesh->nodes[i]);
    return g;
}

/// Gauss order used per mesh interval for callable integrands.
inline constexpr int kElementGaussPoints = 8;

/// |S^3| * int_eps^R f(r) r^3 dr with an 8-point Gauss rule on every interval.
template <class F>
double integrate_radial(F&& f, const GradedMesh& mesh) {
    const auto& rule = gauss_legendre(kElementGaussPoints);
    double sum = 0.0;
    for (std::size_t e = 0; e + 1 < mesh.size(); ++e) {
        sum += gauss_integrate(
            [&](double r) {
                const double v = f(r);
                if (!std::isfinite(v)) throw PreconditionError("integrate_radial: non-finite integrand");
                return v * r * r * r;
            },
            mesh.nodes[e], mesh.nodes[e + 1], rule);
    }
    return kSphere3Area * sum;
}

/// |S^3| * int f r^3 dr for a sampled function, trapezoid rule on f r^3.
double integrate_radial(const RadialGridFunction& f);

/// H^1_0 inner product |S^3| int u' v' r^3 dr with piecewise-constant derivatives.
double h1_inner(const RadialGridFunction& u, const RadialGridFunction& v);
double h1_norm(const RadialGridFunction& u);

/// Weighted L^p norm (|S^3| int |u|^p r^3 dr)^{1/p}; trapezoid on the sampled form.
double lp_norm(const RadialGridFunction& u, double p);

/// Weighted L^p norm of a callable over the mesh (Gauss per interval).
template <class F>
double lp_norm(F&& f, const GradedMesh& mesh, double p) {
    if (!(p >= 1.0)) throw PreconditionError("lp_norm: p must be at least 1");
    return std::pow(integrate_radial([&](double r) { return std::pow(std::abs(f(r)), p); }, mesh), 1.0 / p);
}

/// Throws PreconditionError unless both functions live on the same mesh.
void require_same_mesh(const RadialGridFunction& u, const RadialGridFunction& v);

}  // namespace fountain
