#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fountain/solver/rates.hpp"

namespace fountain {

struct ContinuationPoint {
    double eps = 0.0;
    SystemState state;
    RateFit fit;
    CorrectorNorm corrector;
};

struct ContinuationResult {
    std::vector<ContinuationPoint> points;
    std::optional<double> failed_eps;  ///< set when a solve failed; points holds the prefix
    std::string failure;
};

/// Solves at each eps of a strictly decreasing sequence. The first point starts
/// from the ansatz at cfg.d; every later point starts from a fresh ansatz at the
/// new eps whose rate coefficients are the previous point's fitted d^eps.
ContinuationResult continuation_sweep(const TowerConfig& cfg, const std::vector<double>& eps_list,
                                      int points_per_decade, const NewtonOptions& opts = {});

}  // namespace fountain
