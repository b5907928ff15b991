#pragma once

#include <functional>
#include <vector>

#include "fountain/quadrature/radial.hpp"

namespace fountain {

/// P1 stiffness of the 4-D radial Laplacian restricted to interior nodes
/// (zero Dirichlet data at eps and R): a symmetric positive-definite
/// tridiagonal matrix with entries |S^3| w_e / h_e^2, w_e = int_e r^3 dr.
struct Stiffness {
    std::vector<double> diag;  ///< size n_interior
    std::vector<double> off;   ///< size n_interior - 1, (p, p+1) coupling

    std::size_t size() const { return diag.size(); }
    std::vector<double> apply(const std::vector<double>& x) const;
    /// Solves K x = b by the Thomas algorithm.
    std::vector<double> solve(const std::vector<double>& b) const;
};

/// int_e r^3 dr for every element.
std::vector<double> element_weights(const GradedMesh& mesh);

Stiffness assemble_stiffness(const GradedMesh& mesh);

/// Gauss rule used on each element for nonlinear loads and Jacobians; four
/// points integrate the cubic-times-r^3 polynomial terms exactly.
inline constexpr int kLoadGaussPoints = 4;

/// Load vector b_n = |S^3| int g phi_n r^3 dr over interior nodes for a callable g.
std::vector<double> load_vector(const GradedMesh& mesh, const std::function<double(double)>& g);

/// Load vector for a sampled g, interpreted as its piecewise-linear interpolant.
std::vector<double> load_vector(const RadialGridFunction& g);

/// The adjoint I*: P1 Galerkin solution of -Laplace v = g with zero trace.
RadialGridFunction dirichlet_solve(const RadialGridFunction& g);
RadialGridFunction dirichlet_solve(const MeshPtr& mesh, const std::function<double(double)>& g);

/// Embeds interior values into a zero-trace grid function and back.
RadialGridFunction from_interior(const MeshPtr& mesh, const std::vector<double>& interior);
std::vector<double> to_interior(const RadialGridFunction& u);

/// Dual norm sqrt(F^T K^{-1} F) of a weak residual given on interior nodes.
double riesz_norm(const Stiffness& K, const std::vector<double>& F);

/// Discrete projected bubble P_h U_delta = I*_h(U_delta^3).
RadialGridFunction discrete_projected_bubble(const MeshPtr& mesh, double delta);

/// d/d(delta) of discrete_projected_bubble = I*_h(3 U^2 psi).
RadialGridFunction discrete_projected_dbubble(const MeshPtr& mesh, double delta);

}  // namespace fountain
