#include "fountain/core/tower_config.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fountain/core/error.hpp"

namespace fountain {

double TowerConfig::coupling_between(int i, int j) const {
    if (i == j) return 0.0;
    if (coupling.empty()) return beta;
    return coupling[static_cast<std::size_t>(i) * m() + j];
}

double rate_scale(double eps, int j, int k) {
    if (!(eps > 0.0) || !(eps < 1.0)) throw PreconditionError("rate_scale: requires 0 < eps < 1");
    const double e = static_cast<double>(j) / (k + 1);
    return std::pow(eps, e) * std::pow(std::log(1.0 / eps), 0.5 - e);
}

RateSchedule rate_schedule(double eps, const std::vector<double>& d) {
    if (!(eps > 0.0) || !(eps < 1.0)) throw PreconditionError("rate_schedule: requires 0 < eps < 1");
    if (d.empty()) throw PreconditionError("rate_schedule: need at least one rate coefficient");
    const int k = static_cast<int>(d.size());
    RateSchedule s;
    s.deltas.resize(k);
    for (int j = 0; j < k; ++j) {
        if (!(d[j] > 0.0)) throw PreconditionError("rate_schedule: rate coefficients must be positive");
        s.deltas[j] = d[j] * rate_scale(eps, j + 1, k);
        s.eps_over_delta.push_back(eps / s.deltas[j]);
    }
    s.monotone = true;
    for (int j = 0; j + 1 < k; ++j) {
        const double q = s.deltas[j + 1] / s.deltas[j];
        s.consecutive_ratios.push_back(q);
        if (!(q < 1.0)) s.monotone = false;
    }
    s.delta1_over_R = 0.0;

    // delta_{j+1}/delta_j = (d_{j+1}/d_j) (eps / log(1/eps))^{1/(k+1)}, and
    // eps/log(1/eps) is increasing on (0, 1), so the threshold solves
    // eps/log(1/eps) = min_j (d_j/d_{j+1})^{k+1}.
    if (k == 1) {
        s.monotone_threshold = 1.0;
    } else {
        double target = INFINITY;
        for (int j = 0; j + 1 < k; ++j) target = std::min(target, std::pow(d[j] / d[j + 1], k + 1));
        double lo = 0.0;
        double hi = 1.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid / std::log(1.0 / mid) < target) lo = mid; else hi = mid;
        }
        s.monotone_threshold = lo;
    }
    return s;
}

RateSchedule rate_schedule(const TowerConfig& cfg) {
    auto s = rate_schedule(cfg.eps, cfg.d);
    s.delta1_over_R = s.deltas.front() / cfg.R;
    return s;
}

void check_tower_config(const TowerConfig& cfg) {
    const auto pc = validate_partition(cfg.partition);
    if (!pc.ok()) {
        throw PreconditionError("partition violates condition (" + std::to_string(pc.condition) +
                                "): " + pc.message);
    }
    if (!(cfg.R > 0.0) || !(cfg.eps > 0.0) || !(cfg.eps < cfg.R)) {
        throw PreconditionError("domain requires 0 < eps < R");
    }
    if (!(cfg.eps < 1.0)) throw PreconditionError("eps must be below 1 so that log(1/eps) > 0");
    if (static_cast<int>(cfg.mu.size()) != cfg.m()) throw PreconditionError("mu needs one entry per component");
    if (static_cast<int>(cfg.d.size()) != cfg.k()) throw PreconditionError("d needs one entry per bubble");
    for (double v : cfg.mu) {
        if (!(v > 0.0)) throw PreconditionError("mu entries must be positive");
    }
    if (!(cfg.eta > 0.0) || !(cfg.eta < 1.0)) throw PreconditionError("eta must lie in (0, 1)");
    for (double v : cfg.d) {
        if (!(v > cfg.eta) || !(v < 1.0 / cfg.eta)) {
            throw PreconditionError("rate coefficient " + std::to_string(v) + " outside (eta, 1/eta)");
        }
    }
    if (cfg.beta > 0.0) throw PreconditionError("coupling beta must be non-positive (competitive regime)");
    if (!cfg.coupling.empty()) {
        if (static_cast<int>(cfg.coupling.size()) != cfg.m() * cfg.m()) {
            throw PreconditionError("coupling matrix must be m x m");
        }
        for (int i = 0; i < cfg.m(); ++i) {
            for (int j = 0; j < cfg.m(); ++j) {
                if (i != j && cfg.coupling_between(i, j) > 0.0) {
                    throw PreconditionError("coupling entries must be non-positive");
                }
            }
        }
    }
    const auto s = rate_schedule(cfg);
    if (!(s.eps_over_delta.back() < 1.0) || !(s.delta1_over_R < 1.0) || !s.monotone) {
        throw PreconditionError("scales are not separated: need eps < delta_k < ... < delta_1 < R");
    }
}

}  // namespace fountain
