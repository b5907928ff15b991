#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fountain/report/record.hpp"
#include "fountain/report/run_config.hpp"

namespace fountain {

// Each cmd_* computes a RunRecord without touching the disk; persist_run
// writes it (append-only) together with its plots and tabular exports.

RunRecord cmd_constants(const RunConfig& cfg);

/// Runs a registered lemma sweep with cfg.lemma_params / cfg.lemma_values as overrides.
RunRecord cmd_verify(const RunConfig& cfg, const std::string& lemma);

/// Closed-form d*, multi-start numeric cross-check seeded by cfg.seed, and the
/// theorem-formula check. Throws PreconditionError when beta >= 0.
RunRecord cmd_minimize(const RunConfig& cfg);

/// Newton solve at cfg.eps with rate fit, corrector norm, sigma_min and J.
RunRecord cmd_solve(const RunConfig& cfg);

/// Continuation over cfg.eps_list. A failing point ends the sweep; the
/// partial results and the failure are recorded rather than thrown.
RunRecord cmd_sweep(const RunConfig& cfg);

struct PersistedRun {
    std::filesystem::path record;
    std::vector<std::filesystem::path> artifacts;
};

PersistedRun persist_run(const RunRecord& record, const std::filesystem::path& dir);

/// Plots and CSV derived from a record (the record itself is not written).
std::vector<std::filesystem::path> write_artifacts(const RunRecord& record, const std::filesystem::path& dir,
                                                   const std::string& stem);

/// One CSV row per sweep point: eps, delta_j..., d_j..., phi_h1, residual,
/// sigma_min, J, verdicts.
std::string sweep_csv(const RunRecord& sweep_record);

/// Consolidated markdown for every record in `dir`; also written to
/// dir/report.md. An empty directory yields a "no records" document.
std::string cmd_report(const std::filesystem::path& dir);

}  // namespace fountain
