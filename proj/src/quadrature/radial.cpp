#include "fountain/quadrature/radial.hpp"

#include <algorithm>

namespace fountain {

double RadialGridFunction::at(double r) const {
    const auto& x = mesh->nodes;
    if (r <= x.front()) return values.front();
    if (r >= x.back()) return values.back();
    const auto it = std::upper_bound(x.begin(), x.end(), r);
    const std::size_t i = static_cast<std::size_t>(it - x.begin()) - 1;
    const double w = (r - x[i]) / (x[i + 1] - x[i]);
    return (1.0 - w) * values[i] + w * values[i + 1];
}

RadialGridFunction zeros(const MeshPtr& mesh) {
    return RadialGridFunction{mesh, std::vector<double>(mesh->size(), 0.0)};
}

void require_same_mesh(const RadialGridFunction& u, const RadialGridFunction& v) {
    if (u.mesh != v.mesh && (!u.mesh || !v.mesh || u.mesh->nodes != v.mesh->nodes)) {
        throw PreconditionError("grid functions live on different meshes");
    }
    if (u.values.size() != v.values.size()) throw PreconditionError("grid function size mismatch");
}

double integrate_radial(const RadialGridFunction& f) {
    const auto& x = f.mesh->nodes;
    double sum = 0.0;
    for (std::size_t e = 0; e + 1 < x.size(); ++e) {
        const double a = f.values[e] * x[e] * x[e] * x[e];
        const double b = f.values[e + 1] * x[e + 1] * x[e + 1] * x[e + 1];
        if (!std::isfinite(a) || !std::isfinite(b)) throw PreconditionError("integrate_radial: non-finite sample");
        sum += 0.5 * (a + b) * (x[e + 1] - x[e]);
    }
    return kSphere3Area * sum;
}

double h1_inner(const RadialGridFunction& u, const RadialGridFunction& v) {
    require_same_mesh(u, v);
    const auto& x = u.mesh->nodes;
    double sum = 0.0;
    for (std::size_t e = 0; e + 1 < x.size(); ++e) {
        const double h = x[e + 1] - x[e];
        const double r0 = x[e];
        const double r1 = x[e + 1];
        const double w = 0.25 * h * (r1 + r0) * (r1 * r1 + r0 * r0);
        sum += w * (u.values[e + 1] - u.values[e]) * (v.values[e + 1] - v.values[e]) / (h * h);
    }
    return kSphere3Area * sum;
}

double h1_norm(const RadialGridFunction& u) {
    return std::sqrt(std::max(0.0, h1_inner(u, u)));
}

double lp_norm(const RadialGridFunction& u, double p) {
    if (!(p >= 1.0)) throw PreconditionError("lp_norm: p must be at least 1");
    RadialGridFunction a{u.mesh, u.values};
    for (double& v : a.values) v = std::pow(std::abs(v), p);
    return std::pow(integrate_radial(a), 1.0 / p);
}

}  // namespace fountain
