#pragma once

#include <vector>

#include "fountain/solver/system.hpp"

namespace fountain {

struct SigmaMinReport {
    double projected = 0.0;      ///< smallest |eigenvalue| of (Q, S) restricted to K-perp
    double unprojected = 0.0;    ///< same on the whole zero-trace space
    double gram_condition = 0.0; ///< condition number of the normalised P psi Gram matrix
    std::vector<double> deltas;  ///< scales the kernel directions were built at
};

/// Smallest generalized singular value of the linearization Q (the Jacobian of
/// the weak residual) relative to the H^1 Gram form S, with and without the
/// restriction to the H^1-orthogonal complement of span{P psi_j} taken per
/// component (closed-form P psi_j sampled on the mesh at `deltas`).
/// Throws ConditioningError if the Gram matrix condition exceeds 1e12.
SigmaMinReport projected_linearization_sigma_min(const SystemState& state, const std::vector<double>& deltas);

}  // namespace fountain
