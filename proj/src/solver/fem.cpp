#include "fountain/solver/fem.hpp"

#include <cmath>

#include "fountain/core/bubble.hpp"

namespace fountain {

std::vector<double> Stiffness::apply(const std::vector<double>& x) const {
    const std::size_t n = diag.size();
    std::vector<double> y(n);
    for (std::size_t p = 0; p < n; ++p) {
        double v = diag[p] * x[p];
        if (p > 0) v += off[p - 1] * x[p - 1];
        if (p + 1 < n) v += off[p] * x[p + 1];
        y[p] = v;
    }
    return y;
}

std::vector<double> Stiffness::solve(const std::vector<double>& b) const {
    const std::size_t n = diag.size();
    if (b.size() != n) throw PreconditionError("Stiffness::solve: size mismatch");
    std::vector<double> c(n);
    std::vector<double> x(n);
    double denom = diag[0];
    if (!(denom > 0.0)) throw PreconditionError("Stiffness::solve: singular stiffness");
    c[0] = n > 1 ? off[0] / denom : 0.0;
    x[0] = b[0] / denom;
    for (std::size_t p = 1; p < n; ++p) {
        denom = diag[p] - off[p - 1] * c[p - 1];
        if (!(denom > 0.0)) throw PreconditionError("Stiffness::solve: singular stiffness");
        c[p] = p + 1 < n ? off[p] / denom : 0.0;
        x[p] = (b[p] - off[p - 1] * x[p - 1]) / denom;
    }
    for (std::size_t p = n - 1; p-- > 0;) x[p] -= c[p] * x[p + 1];
    return x;
}

std::vector<double> element_weights(const GradedMesh& mesh) {
    std::vector<double> w(mesh.elements());
    for (std::size_t e = 0; e < w.size(); ++e) {
        const double r0 = mesh.nodes[e];
        const double r1 = mesh.nodes[e + 1];
        w[e] = 0.25 * (r1 - r0) * (r1 + r0) * (r1 * r1 + r0 * r0);
    }
    return w;
}

Stiffness assemble_stiffness(const GradedMesh& mesh) {
    const auto w = element_weights(mesh);
    const std::size_t n = mesh.size() - 2;
    Stiffness K;
    K.diag.assign(n, 0.0);
    K.off.assign(n > 0 ? n - 1 : 0, 0.0);
    for (std::size_t e = 0; e < w.size(); ++e) {
        const double h = mesh.nodes[e + 1] - mesh.nodes[e];
        const double k = kSphere3Area * w[e] / (h * h);
        // element e joins nodes e and e+1; interior index p = node - 1
        if (e >= 1) K.diag[e - 1] += k;
        if (e + 1 <= n) K.diag[e] += k;
        if (e >= 1 && e + 1 <= n) K.off[e - 1] -= k;
    }
    return K;
}

std::vector<double> load_vector(const GradedMesh& mesh, const std::function<double(double)>& g) {
    const auto& rule = gauss_legendre(kLoadGaussPoints);
    const std::size_t n = mesh.size() - 2;
    std::vector<double> b(n, 0.0);
    for (std::size_t e = 0; e + 1 < mesh.size(); ++e) {
        const double r0 = mesh.nodes[e];
        const double r1 = mesh.nodes[e + 1];
        const double h = r1 - r0;
        double left = 0.0;
        double right = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double s = 0.5 * (1.0 + rule.nodes[q]);
            const double r = r0 + s * h;
            const double v = 0.5 * h * rule.weights[q] * g(r) * r * r * r;
            left += v * (1.0 - s);
            right += v * s;
        }
        if (e >= 1) b[e - 1] += kSphere3Area * left;
        if (e + 1 <= n) b[e] += kSphere3Area * right;
    }
    for (double v : b) {
        if (!std::isfinite(v)) throw PreconditionError("load_vector: non-finite load");
    }
    return b;
}

std::vector<double> load_vector(const RadialGridFunction& g) {
    const auto& mesh = *g.mesh;
    const auto& rule = gauss_legendre(kLoadGaussPoints);
    const std::size_t n = mesh.size() - 2;
    std::vector<double> b(n, 0.0);
    for (std::size_t e = 0; e + 1 < mesh.size(); ++e) {
        const double r0 = mesh.nodes[e];
        const double r1 = mesh.nodes[e + 1];
        const double h = r1 - r0;
        double left = 0.0;
        double right = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double s = 0.5 * (1.0 + rule.nodes[q]);
            const double r = r0 + s * h;
            const double gv = (1.0 - s) * g.values[e] + s * g.values[e + 1];
            const double v = 0.5 * h * rule.weights[q] * gv * r * r * r;
            left += v * (1.0 - s);
            right += v * s;
        }
        if (e >= 1) b[e - 1] += kSphere3Area * left;
        if (e + 1 <= n) b[e] += kSphere3Area * right;
    }
    for (double v : b) {
        if (!std::isfinite(v)) throw PreconditionError("load_vector: non-finite load");
    }
    return b;
}

RadialGridFunction from_interior(const MeshPtr& mesh, const std::vector<double>& interior) {
    RadialGridFunction u = zeros(mesh);
    for (std::size_t p = 0; p < interior.size(); ++p) u.values[p + 1] = interior[p];
    return u;
}

std::vector<double> to_interior(const RadialGridFunction& u) {
    return std::vector<double>(u.values.begin() + 1, u.values.end() - 1);
}

RadialGridFunction dirichlet_solve(const RadialGridFunction& g) {
    const auto K = assemble_stiffness(*g.mesh);
    return from_interior(g.mesh, K.solve(load_vector(g)));
}

RadialGridFunction dirichlet_solve(const MeshPtr& mesh, const std::function<double(double)>& g) {
    const auto K = assemble_stiffness(*mesh);
    return from_interior(mesh, K.solve(load_vector(*mesh, g)));
}

double riesz_norm(const Stiffness& K, const std::vector<double>& F) {
    const auto v = K.solve(F);
    double s = 0.0;
    for (std::size_t p = 0; p < F.size(); ++p) s += F[p] * v[p];
    return std::sqrt(std::max(0.0, s));
}

RadialGridFunction discrete_projected_bubble(const MeshPtr& mesh, double delta) {
    const Bubble b = make_bubble(delta);
    return dirichlet_solve(mesh, [b](double r) {
        const double u = b.value(r);
        return u * u * u;
    });
}

RadialGridFunction discrete_projected_dbubble(const MeshPtr& mesh, double delta) {
    const Bubble b = make_bubble(delta);
    return dirichlet_solve(mesh, [b](double r) {
        const double u = b.value(r);
        return 3.0 * u * u * b.delta_derivative(r);
    });
}

}  // namespace fountain
