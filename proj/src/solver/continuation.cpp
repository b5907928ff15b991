#include "fountain/solver/continuation.hpp"

#include <stdexcept>

namespace fountain {

ContinuationResult continuation_sweep(const TowerConfig& cfg, const std::vector<double>& eps_list,
                                      int points_per_decade, const NewtonOptions& opts) {
    for (std::size_t i = 1; i < eps_list.size(); ++i) {
        if (!(eps_list[i] < eps_list[i - 1])) throw PreconditionError("continuation: eps sequence must decrease");
    }
    ContinuationResult out;
    std::vector<double> warm = cfg.d;
    for (double eps : eps_list) {
        TowerConfig at = cfg;
        at.eps = eps;
        try {
            ContinuationPoint pt;
            pt.eps = eps;
            pt.state = newton_solve(at, points_per_decade, opts, &warm);
            pt.fit = extract_rates(pt.state, &warm);
            pt.corrector = corrector_norm(pt.state, pt.fit);
            warm = pt.fit.d;
            out.points.push_back(std::move(pt));
        } catch (const std::exception& e) {
            out.failed_eps = eps;
            out.failure = e.what();
            break;
        }
    }
    return out;
}

}  // namespace fountain
