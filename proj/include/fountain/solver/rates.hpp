#pragma once

#include <vector>

#include "fountain/solver/system.hpp"

namespace fountain {

struct RateFit {
    std::vector<double> deltas;  ///< fitted delta_j, decreasing in j
    std::vector<double> d;       ///< delta_j / (eps^{j/(k+1)} (log 1/eps)^{1/2 - j/(k+1)})
    double residual = 0.0;       ///< ||u - tower(deltas)||_{H^1} / ||u||_{H^1}
    int iterations = 0;
};

/// Fits the concentration scales by minimising the H^1 distance
///   sum_i || u_i - mu_i^{-1/2} sum_{j in I_i} P_h U_{delta_j} ||^2
/// over log(delta) with a Levenberg-Marquardt iteration started at the
/// schedule of `initial_d` (state.cfg.d when null). At the optimum the gap is
/// H^1-orthogonal to every P_h psi_j of its component. Throws FitError when
/// the relative gap exceeds 20%.
RateFit extract_rates(const SystemState& state, const std::vector<double>* initial_d = nullptr);

struct CorrectorNorm {
    double phi_h1 = 0.0;          ///< ||phi||_{H^1} over all components
    double over_delta1 = 0.0;     ///< ||phi|| / delta_1
    double over_rate = 0.0;       ///< ||phi|| / (eps^{1/(k+1)} (log 1/eps)^{-1/(k+1)})
};

/// ||phi|| with phi_i = u_i - mu_i^{-1/2} sum_{j in I_i} P_h U_{delta_j^fit}.
CorrectorNorm corrector_norm(const SystemState& state, const RateFit& fit);

}  // namespace fountain
