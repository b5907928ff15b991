// Command-line front end: constants | verify <lemma> | minimize | solve | sweep | report.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fountain/asymptotics/sweeps.hpp"
#include "fountain/report/commands.hpp"

namespace {

struct CommonOptions {
    std::string config;
    std::string out;
    std::optional<int> ppd;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--config", o.config, "JSON run configuration")->check(CLI::ExistingFile);
    cmd->add_option("--out", o.out, "output directory (overrides output.dir)");
    cmd->add_option("--ppd", o.ppd, "mesh points per decade");
    cmd->add_option("--tol", o.tol, "Newton tolerance on the relative H1 residual");
    cmd->add_option("--seed", o.seed, "seed for multi-start minimisation");
}

fountain::RunConfig resolve(const CommonOptions& o) {
    fountain::RunConfig cfg = o.config.empty() ? fountain::parse_run_config(nlohmann::json::object())
                                               : fountain::load_run_config(o.config);
    if (!o.out.empty()) cfg.out_dir = o.out;
    if (o.ppd) cfg.points_per_decade = *o.ppd;
    if (o.tol) cfg.solver.tol = *o.tol;
    if (o.seed) cfg.seed = *o.seed;
    fountain::validate_run_config(cfg);
    return cfg;
}

int finish(const fountain::RunRecord& rec, const fountain::RunConfig& cfg) {
    const auto saved = fountain::persist_run(rec, cfg.out_dir);
    bool all = true;
    for (const auto& v : rec.verdicts) {
        std::cout << (v.pass ? "PASS" : "FAIL") << "  [" << v.criterion << "] " << v.name << ": " << v.detail << '\n';
        all = all && v.pass;
    }
    std::cout << "record: " << saved.record.string() << '\n';
    for (const auto& a : saved.artifacts) std::cout << "wrote:  " << a.string() << '\n';
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bubble-tower solutions of a competitive cubic system on a pierced ball in R^4"};
    app.require_subcommand(1);

    CommonOptions constants_opts, verify_opts, minimize_opts, solve_opts, sweep_opts, report_opts;
    auto* constants = app.add_subcommand("constants", "universal constants by quadrature vs closed form");
    add_common(constants, constants_opts);

    auto* verify = app.add_subcommand("verify", "run an asymptotic-estimate sweep");
    std::string lemma;
    std::string names;
    for (const auto& n : fountain::lemma_names()) names += (names.empty() ? "" : ", ") + n;
    verify->add_option("lemma", lemma, "one of: " + names)->required();
    add_common(verify, verify_opts);

    auto* minimize = app.add_subcommand("minimize", "minimiser of the reduced energy");
    add_common(minimize, minimize_opts);

    auto* solve = app.add_subcommand("solve", "Newton solve at domain.eps");
    add_common(solve, solve_opts);

    auto* sweep = app.add_subcommand("sweep", "continuation over sweep.eps_list");
    add_common(sweep, sweep_opts);

    auto* report = app.add_subcommand("report", "consolidate the records of a run directory");
    std::string report_dir;
    report->add_option("dir", report_dir, "run directory (defaults to --out or output.dir)");
    add_common(report, report_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*constants) {
            const auto cfg = resolve(constants_opts);
            return finish(fountain::cmd_constants(cfg), cfg);
        }
        if (*verify) {
            const auto cfg = resolve(verify_opts);
            return finish(fountain::cmd_verify(cfg, lemma), cfg);
        }
        if (*minimize) {
            const auto cfg = resolve(minimize_opts);
            return finish(fountain::cmd_minimize(cfg), cfg);
        }
        if (*solve) {
            const auto cfg = resolve(solve_opts);
            return finish(fountain::cmd_solve(cfg), cfg);
        }
        if (*sweep) {
            const auto cfg = resolve(sweep_opts);
            return finish(fountain::cmd_sweep(cfg), cfg);
        }
        if (*report) {
            const auto cfg = resolve(report_opts);
            std::cout << fountain::cmd_report(report_dir.empty() ? cfg.out_dir : report_dir);
            return 0;
        }
    } catch (const fountain::NonConvergenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        for (const auto& t : e.trace()) {
            std::cerr << "  iter " << t.iteration << "  residual " << t.residual << "  step " << t.step_length << '\n';
        }
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
