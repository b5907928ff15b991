#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace fountain {

/// Strictly increasing radii covering [eps, R], graded towards a set of
/// concentration scales. Immutable once built.
struct GradedMesh {
    std::vector<double> nodes;
    std::vector<double> scales;
    int points_per_decade = 64;

    std::size_t size() const { return nodes.size(); }
    std::size_t elements() const { return nodes.size() - 1; }
    double eps() const { return nodes.front(); }
    double R() const { return nodes.back(); }
};

using MeshPtr = std::shared_ptr<const GradedMesh>;

/// Builds a mesh whose node density in t = log10 r is a uniform
/// points_per_decade + 1, doubled on a plateau reaching 1.5 decades beyond the
/// smallest and largest scale (linear one-decade ramps at either end). Nodes sit
/// at equal steps of the cumulative density, so the mesh is geometric wherever
/// the density is flat. Every decade receives at least points_per_decade nodes
/// and every window [delta_j/3, 3 delta_j] at least points_per_decade.
MeshPtr build_mesh(double eps, double R, const std::vector<double>& scales, int points_per_decade);

/// Count of nodes lying in [a, b].
std::size_t nodes_in(const GradedMesh& mesh, double a, double b);

}  // namespace fountain
