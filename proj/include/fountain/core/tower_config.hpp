#pragma once

#include <vector>

#include "fountain/core/partition.hpp"

namespace fountain {

/// Full description of one bubble-tower problem on B_R \ B_eps in R^4.
struct TowerConfig {
    double R = 1.0;
    double eps = 1e-5;
    Partition partition;
    double beta = -1.0;
    std::vector<double> mu;  ///< one positive coefficient per component
    std::vector<double> d;   ///< one positive rate coefficient per bubble
    double eta = 1e-3;       ///< admissibility box eta < d_j < 1/eta

    /// Optional m x m (row-major) coupling matrix; diagonal ignored. Empty means
    /// the uniform coupling `beta` between every pair of components.
    std::vector<double> coupling;

    int k() const { return partition.k; }
    int m() const { return partition.m; }
    double coupling_between(int i, int j) const;
};

struct RateSchedule {
    std::vector<double> deltas;              ///< delta_1 > ... > delta_k
    std::vector<double> eps_over_delta;      ///< eps / delta_j
    std::vector<double> consecutive_ratios;  ///< delta_{j+1} / delta_j
    double delta1_over_R = 0.0;
    bool monotone = false;
    /// Largest eps below which the schedule is strictly decreasing (1 when k = 1).
    double monotone_threshold = 0.0;
};

/// eps^{j/(k+1)} (log 1/eps)^{1/2 - j/(k+1)}; j is 1-based.
double rate_scale(double eps, int j, int k);

RateSchedule rate_schedule(double eps, const std::vector<double>& d);
RateSchedule rate_schedule(const TowerConfig& cfg);

/// Throws PreconditionError / EnvelopeError describing the first problem found:
/// invalid partition, non-positive mu or d, d outside X_eta, beta > 0, or
/// scales not separated (eps/delta_k >= 1 or delta_1/R >= 1).
void check_tower_config(const TowerConfig& cfg);

}  // namespace fountain
