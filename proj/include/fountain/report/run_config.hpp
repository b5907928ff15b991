#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fountain/core/tower_config.hpp"
#include "fountain/solver/system.hpp"
#include "json.hpp"

namespace fountain {

/// Default tolerances of every verdict, overridable per run under "tolerances".
///
/// | key                    | default | verdict                                           |
/// |------------------------|---------|---------------------------------------------------|
/// | newton_max_iters_pass  | 15      | solve: Newton iterations allowed for a pass       |
/// | corrector_slope_margin | 0.1     | sweep: log-slope of ||phi|| >= 1/(k+1) - margin   |
/// | sigma_min_factor       | 2       | sweep: max/min of projected sigma_min             |
/// | unprojected_decay      | 10      | sweep: decay of the unprojected sigma_min         |
/// | minimizer_gradient     | 1e-10   | minimize: ||grad Psi(x*)|| / Psi(x*)              |
/// | minimizer_agreement    | 1e-8    | minimize: numeric vs closed-form x*, relative     |
/// | theorem_agreement      | 1e-12   | minimize: theorem vs lemma d*, relative           |
/// | constants_relative     | 1e-8    | constants: quadrature vs closed form              |
/// | constants_identity     | 1e-10   | constants: A = alpha4/gamma4, A^2 gamma4 = Gamma  |
struct Tolerances {
    int newton_max_iters_pass = 15;
    double corrector_slope_margin = 0.1;
    double sigma_min_factor = 2.0;
    double unprojected_decay = 10.0;
    double minimizer_gradient = 1e-10;
    double minimizer_agreement = 1e-8;
    double theorem_agreement = 1e-12;
    double constants_relative = 1e-8;
    double constants_identity = 1e-10;
};

struct SolverSettings {
    double tol = 1e-10;
    int max_iters = 50;
    std::string strategy = "automatic";  ///< "direct" | "reduced" | "automatic"
    bool sigma_min = true;               ///< compute sigma_min per solved point
};

/// Everything a run needs; mirrors TowerConfig plus orchestration settings.
struct RunConfig {
    double R = 1.0;
    double eps = 1e-5;
    std::vector<double> eps_list;  ///< sweep.eps_list; empty for single solves
    int k = 2;
    int m = 2;
    std::vector<std::vector<int>> partition;  ///< 1-based groups; empty means odd/even
    double beta = -1.0;
    std::vector<double> mu;  ///< empty means all ones
    bool d_star = true;      ///< rates.d == "star"
    std::vector<double> d;
    SolverSettings solver;
    int points_per_decade = 64;
    std::string out_dir = "runs";
    std::uint64_t seed = 0;
    Tolerances tolerances;
    std::map<std::string, double> lemma_params;  ///< verify: scalar overrides
    std::optional<std::vector<double>> lemma_values;
};

/// Parses the documented schema. Missing keys take their defaults; unknown
/// top-level sections, wrong types and invalid partitions are rejected with
/// PreconditionError. The result has been through validate_run_config.
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::filesystem::path& path);

/// Full serialisation (every field written explicitly, so parse(to_json(c)) == c).
nlohmann::json to_json(const RunConfig& c);

/// Partition rules, mu/d sizes, eps envelope and ppd envelope.
void validate_run_config(const RunConfig& c);

/// d* of the reduced energy for (k, beta, R); requires beta < 0 when k > 1.
std::vector<double> reduced_minimizer_d(int k, double beta, double R);

/// The TowerConfig at a given eps, with d = d* resolved when requested.
TowerConfig tower_config(const RunConfig& c, double eps);
TowerConfig tower_config(const RunConfig& c);

NewtonOptions newton_options(const RunConfig& c);

}  // namespace fountain
