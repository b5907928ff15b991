#include "fountain/report/commands.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "fountain/asymptotics/sweeps.hpp"
#include "fountain/core/constants.hpp"
#include "fountain/core/error.hpp"
#include "fountain/reduced/psi.hpp"
#include "fountain/report/svg.hpp"
#include "fountain/solver/continuation.hpp"
#include "fountain/solver/rates.hpp"
#include "fountain/solver/spectral.hpp"
#include "fountain/solver/system.hpp"

namespace fountain {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

class Stopwatch {
public:
    double lap() {
        const auto now = std::chrono::steady_clock::now();
        const double s = std::chrono::duration<double>(now - last_).count();
        last_ = now;
        return s;
    }

private:
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

RunRecord start_record(const RunConfig& cfg, std::string command) {
    RunRecord r;
    r.command = std::move(command);
    r.config = to_json(cfg);
    return r;
}

std::string fmt(double v, int precision = 6) {
    std::ostringstream s;
    s.precision(precision);
    s << v;
    return s.str();
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Least-squares slope of log y against log x (any number of points >= 2).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
        sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
    }
    return sxy / sxx;
}

double min_interior(const SystemState& s) {
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& u : s.u) {
        for (std::size_t p = 1; p + 1 < u.values.size(); ++p) lo = std::min(lo, u.values[p]);
    }
    return lo;
}

json state_summary(const SystemState& s) {
    json trace = json::array();
    for (const auto& t : s.trace) trace.push_back({t.iteration, t.residual, t.step_length});
    return {{"eps", s.cfg.eps},
            {"converged", s.converged},
            {"newton_iters", s.newton_iters},
            {"residual_h1", s.residual_h1},
            {"ansatz_norm", s.ansatz_norm},
            {"relative_residual", s.residual_h1 / s.ansatz_norm},
            {"min_interior_value", min_interior(s)},
            {"nodes", s.mesh->size()},
            {"trace", trace}};
}

struct PointOutputs {
    json summary;
    json fit;
    json corrector;
    json sigma;
    double J = 0.0;
};

PointOutputs analyse_point(const RunConfig& cfg, const SystemState& state, const RateFit& fit,
                           const CorrectorNorm& corr) {
    PointOutputs p;
    p.summary = state_summary(state);
    p.fit = {{"deltas", fit.deltas}, {"d", fit.d}, {"residual", fit.residual}, {"iterations", fit.iterations}};
    p.corrector = {{"phi_h1", corr.phi_h1}, {"over_delta1", corr.over_delta1}, {"over_rate", corr.over_rate}};
    if (cfg.solver.sigma_min) {
        const auto sig = projected_linearization_sigma_min(state, fit.deltas);
        p.sigma = {{"projected", sig.projected}, {"unprojected", sig.unprojected},
                   {"gram_condition", sig.gram_condition}};
    }
    TowerConfig at = state.cfg;
    at.d = fit.d;
    p.J = reduced_energy_eval(at, cfg.points_per_decade).value;
    return p;
}

}  // namespace

RunRecord cmd_constants(const RunConfig& cfg) {
    auto rec = start_record(cfg, "constants");
    Stopwatch sw;
    const auto c = compute_constants();
    rec.timings["quadrature"] = sw.lap();
    const double eA = rel(c.A, c.A_exact);
    const double eB = rel(c.B, c.B_exact);
    const double eG = rel(c.Gamma, c.Gamma_exact);
    const double idA = rel(c.A, c.alpha4 / c.gamma4);
    const double idG = rel(c.A * c.A * c.gamma4, c.Gamma);
    rec.outputs = {{"A", c.A},
                   {"B", c.B},
                   {"Gamma", c.Gamma},
                   {"interaction_const", c.interaction_const},
                   {"A_exact", c.A_exact},
                   {"B_exact", c.B_exact},
                   {"Gamma_exact", c.Gamma_exact},
                   {"interaction_exact", c.interaction_exact},
                   {"relative_error", {{"A", eA}, {"B", eB}, {"Gamma", eG}}},
                   {"identity_A_alpha4_over_gamma4", idA},
                   {"identity_A2_gamma4_Gamma", idG}};
    const auto& t = cfg.tolerances;
    const double worst = std::max({eA, eB, eG});
    rec.verdicts.push_back({"1", "constants match closed forms", worst <= t.constants_relative,
                            "max relative error " + fmt(worst, 3)});
    rec.verdicts.push_back({"1", "constant identities", std::max(idA, idG) <= t.constants_identity,
                            "A vs alpha4/gamma4 " + fmt(idA, 3) + ", A^2 gamma4 vs Gamma " + fmt(idG, 3)});
    return rec;
}

RunRecord cmd_verify(const RunConfig& cfg, const std::string& lemma) {
    auto rec = start_record(cfg, "verify");
    LemmaOverrides ov;
    ov.params = cfg.lemma_params;
    ov.values = cfg.lemma_values;
    Stopwatch sw;
    const auto reports = verify_lemma(lemma, ov, cfg.points_per_decade);
    rec.timings["sweep"] = sw.lap();
    json reps = json::array();
    for (const auto& r : reports) {
        reps.push_back(to_json(r));
        std::string detail;
        if (r.has_fit) {
            detail = "fitted exponent " + fmt(r.fit.exponent, 5) + ", target " + fmt(r.target, 5) + " +- " +
                     fmt(r.tolerance, 3);
        } else {
            detail = "measured";
            for (double m : r.measured) detail += " " + fmt(m, 5);
        }
        rec.verdicts.push_back({r.criterion, r.name, r.pass, detail});
    }
    rec.outputs = {{"lemma", lemma}, {"reports", reps}};
    return rec;
}

RunRecord cmd_minimize(const RunConfig& cfg) {
    if (!(cfg.beta < 0.0)) {
        throw PreconditionError("minimize: focusing attractive coupling out of scope (requires beta < 0)");
    }
    auto rec = start_record(cfg, "minimize");
    Stopwatch sw;
    const auto c = psi_coefficients(cfg.k, cfg.beta, cfg.R);
    const auto cf = minimizer_closed_form(c);
    const auto g = psi_grad(c, cf.x);
    double gnorm = 0.0;
    for (double v : g) gnorm += v * v;
    gnorm = std::sqrt(gnorm);
    const Eigen::VectorXd spectrum =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(psi_hess(c, cf.x)).eigenvalues();

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> logu(std::log(0.1), std::log(10.0));
    double worst = 0.0;
    int max_iters = 0;
    json starts = json::array();
    for (int s = 0; s < 20; ++s) {
        std::vector<double> x0(cfg.k);
        for (auto& v : x0) v = std::exp(logu(rng));
        const auto pt = psi_minimize_numeric(c, x0);
        for (int i = 0; i < cfg.k; ++i) worst = std::max(worst, rel(pt.x[i], cf.x[i]));
        max_iters = std::max(max_iters, pt.iterations);
        starts.push_back(x0);
    }
    rec.timings["minimize"] = sw.lap();

    rec.outputs = {{"coefficients", {{"a1", c.a1}, {"a2", c.a2}, {"a3", c.a3}, {"k", c.k}}},
                   {"x_star", cf.x},
                   {"d_star", cf.d},
                   {"d_theorem", cf.d_theorem},
                   {"psi_star", cf.psi_value},
                   {"gradient", g},
                   {"gradient_norm_relative", gnorm / cf.psi_value},
                   {"hessian_spectrum", std::vector<double>(spectrum.data(), spectrum.data() + spectrum.size())},
                   {"multistart",
                    {{"starts", starts}, {"max_relative_deviation", worst}, {"max_iterations", max_iters}}},
                   {"theorem_relative_gap", cf.max_relative_gap}};
    const auto& t = cfg.tolerances;
    rec.verdicts.push_back({"7", "closed-form stationarity", gnorm / cf.psi_value < t.minimizer_gradient,
                            "‖grad‖/Psi = " + fmt(gnorm / cf.psi_value, 3)});
    rec.verdicts.push_back({"7", "multi-start agreement", worst <= t.minimizer_agreement,
                            "20 starts, max relative deviation " + fmt(worst, 3)});
    rec.verdicts.push_back({"7", "theorem formula", cf.max_relative_gap <= t.theorem_agreement,
                            "max relative gap " + fmt(cf.max_relative_gap, 3)});
    return rec;
}

RunRecord cmd_solve(const RunConfig& cfg) {
    auto rec = start_record(cfg, "solve");
    const TowerConfig tc = tower_config(cfg);
    Stopwatch sw;
    const SystemState state = newton_solve(tc, cfg.points_per_decade, newton_options(cfg));
    rec.timings["newton"] = sw.lap();
    const RateFit fit = extract_rates(state);
    const CorrectorNorm corr = corrector_norm(state, fit);
    rec.timings["rates"] = sw.lap();
    const auto p = analyse_point(cfg, state, fit, corr);
    rec.timings["analysis"] = sw.lap();

    json u = json::array();
    for (const auto& ui : state.u) u.push_back(ui.values);
    rec.outputs = {{"state", p.summary},
                   {"d_used", tc.d},
                   {"fit", p.fit},
                   {"corrector", p.corrector},
                   {"J", p.J},
                   {"mesh", state.mesh->nodes},
                   {"u", u}};
    if (!p.sigma.is_null()) rec.outputs["sigma_min"] = p.sigma;

    const bool ok = state.converged && state.residual_h1 / state.ansatz_norm < cfg.solver.tol &&
                    state.newton_iters <= cfg.tolerances.newton_max_iters_pass;
    rec.verdicts.push_back({"9", "Newton convergence", ok,
                            std::to_string(state.newton_iters) + " iterations, relative residual " +
                                fmt(state.residual_h1 / state.ansatz_norm, 3)});
    rec.verdicts.push_back({"9", "positivity", min_interior(state) > 0.0,
                            "minimum interior value " + fmt(min_interior(state), 4)});
    return rec;
}

RunRecord cmd_sweep(const RunConfig& cfg) {
    if (cfg.eps_list.empty()) throw PreconditionError("sweep: sweep.eps_list is empty");
    auto rec = start_record(cfg, "sweep");
    const TowerConfig tc = tower_config(cfg);
    Stopwatch sw;
    const auto result = continuation_sweep(tc, cfg.eps_list, cfg.points_per_decade, newton_options(cfg));
    rec.timings["continuation"] = sw.lap();

    json points = json::array();
    std::vector<double> eps, phi, over_d1, sig_p, sig_u;
    std::vector<std::vector<double>> d_traj(cfg.k);
    bool all_converged = true;
    for (const auto& pt : result.points) {
        const auto p = analyse_point(cfg, pt.state, pt.fit, pt.corrector);
        json j = {{"eps", pt.eps}, {"state", p.summary}, {"fit", p.fit}, {"corrector", p.corrector}, {"J", p.J}};
        if (!p.sigma.is_null()) {
            j["sigma_min"] = p.sigma;
            sig_p.push_back(p.sigma["projected"].get<double>());
            sig_u.push_back(p.sigma["unprojected"].get<double>());
        }
        points.push_back(j);
        eps.push_back(pt.eps);
        phi.push_back(pt.corrector.phi_h1);
        over_d1.push_back(pt.corrector.over_delta1);
        for (int i = 0; i < cfg.k; ++i) d_traj[i].push_back(pt.fit.d[i]);
        all_converged = all_converged && pt.state.converged;
    }
    rec.timings["analysis"] = sw.lap();
    rec.outputs = {{"points", points}};
    if (result.failed_eps) {
        rec.outputs["failed_eps"] = *result.failed_eps;
        rec.outputs["failure"] = result.failure;
    }

    const bool complete = !result.failed_eps && result.points.size() == cfg.eps_list.size();
    rec.verdicts.push_back({"9", "all sweep points converged", complete && all_converged,
                            std::to_string(result.points.size()) + " of " + std::to_string(cfg.eps_list.size()) +
                                " points" + (result.failed_eps ? ", failed at eps " + fmt(*result.failed_eps) : "")});

    if (cfg.beta < 0.0 && eps.size() >= 2) {
        const auto dstar = reduced_minimizer_d(cfg.k, cfg.beta, cfg.R);
        rec.outputs["d_star"] = dstar;
        for (int j = 0; j < cfg.k; ++j) {
            bool decreasing = true;
            std::string detail = "|d - d*|:";
            for (std::size_t n = 0; n < eps.size(); ++n) {
                const double gap = std::abs(d_traj[j][n] - dstar[j]);
                detail += " " + fmt(gap, 4);
                if (n > 0 && !(gap < std::abs(d_traj[j][n - 1] - dstar[j]))) decreasing = false;
            }
            rec.verdicts.push_back({"10", "d_" + std::to_string(j + 1) + " approaches d*", decreasing, detail});
        }
    }
    if (eps.size() >= 2) {
        bool decreasing = true;
        for (std::size_t n = 1; n < over_d1.size(); ++n) decreasing = decreasing && over_d1[n] < over_d1[n - 1];
        const double slope = loglog_slope(eps, phi);
        const double floor = 1.0 / (cfg.k + 1.0) - cfg.tolerances.corrector_slope_margin;
        rec.outputs["corrector_slope"] = slope;
        rec.verdicts.push_back({"10", "corrector o(delta_1)", decreasing && slope >= floor,
                                "||phi||/delta_1 decreasing: " + std::string(decreasing ? "yes" : "no") +
                                    ", log-slope " + fmt(slope, 4) + " (floor " + fmt(floor, 4) + ")"});
    }
    if (sig_p.size() >= 2) {
        const double lo = *std::min_element(sig_p.begin(), sig_p.end());
        const double hi = *std::max_element(sig_p.begin(), sig_p.end());
        const double decay = sig_u.front() / sig_u.back();
        rec.verdicts.push_back({"11", "projected sigma_min bounded below",
                                lo > 0.0 && hi / lo < cfg.tolerances.sigma_min_factor,
                                "range [" + fmt(lo, 4) + ", " + fmt(hi, 4) + "]"});
        rec.verdicts.push_back({"11", "unprojected sigma_min degenerates", decay > cfg.tolerances.unprojected_decay,
                                "decay factor " + fmt(decay, 4)});
    }
    return rec;
}

std::string sweep_csv(const RunRecord& r) {
    std::ostringstream o;
    o.precision(17);
    const int k = r.config.at("tower").at("k").get<int>();
    o << "eps";
    for (int j = 1; j <= k; ++j) o << ",delta_" << j;
    for (int j = 1; j <= k; ++j) o << ",d_" << j;
    o << ",phi_h1,residual,sigma_min,J,verdicts\n";
    for (const auto& p : r.outputs.at("points")) {
        o << p.at("eps").get<double>();
        for (double v : p.at("fit").at("deltas")) o << ',' << v;
        for (double v : p.at("fit").at("d")) o << ',' << v;
        o << ',' << p.at("corrector").at("phi_h1").get<double>();
        o << ',' << p.at("state").at("residual_h1").get<double>();
        o << ',';
        if (p.contains("sigma_min")) o << p.at("sigma_min").at("projected").get<double>();
        o << ',' << p.at("J").get<double>();
        const bool conv = p.at("state").at("converged").get<bool>();
        const bool pos = p.at("state").at("min_interior_value").get<double>() > 0.0;
        o << ',' << (conv ? "converged" : "not-converged") << ';' << (pos ? "positive" : "sign-change") << '\n';
    }
    return o.str();
}

std::vector<fs::path> write_artifacts(const RunRecord& r, const fs::path& dir, const std::string& stem) {
    std::vector<fs::path> out;
    auto plot = [&](const PlotSpec& spec, const std::string& suffix) {
        const fs::path path = dir / (stem + suffix + ".svg");
        write_svg(spec, path);
        out.push_back(path);
    };
    if (r.command == "verify") {
        int idx = 0;
        for (const auto& rep : r.outputs.at("reports")) {
            PlotSpec spec;
            spec.title = rep.at("name").get<std::string>();
            spec.xlabel = rep.at("parameter").get<std::string>();
            spec.ylabel = "measured";
            const auto x = rep.at("x").get<std::vector<double>>();
            const auto y = rep.at("measured").get<std::vector<double>>();
            spec.series.push_back({"measured", x, y, true});
            if (rep.contains("fit")) {
                const auto& f = rep.at("fit");
                const double p = f.at("exponent").get<double>();
                const double c = f.at("constant").get<double>();
                const double s = f.at("log_power").get<double>();
                const double target = rep.at("target").get<double>();
                std::vector<double> fitted, ref;
                auto law = [&](double xx, double pw) { return std::pow(xx, pw) * (s != 0.0 ? std::pow(std::log(1.0 / xx), s) : 1.0); };
                for (double xx : x) fitted.push_back(c * law(xx, p));
                // Target slope anchored at the smallest-x point.
                std::size_t a = std::min_element(x.begin(), x.end()) - x.begin();
                for (double xx : x) ref.push_back(y[a] * law(xx, target) / law(x[a], target));
                spec.series.push_back({"fit, slope " + fmt(p, 4), x, fitted, false});
                spec.series.push_back({"target slope " + fmt(target, 4), x, ref, false});
            } else {
                spec.log_y = false;
                const auto model = rep.at("model").get<std::vector<double>>();
                if (model.size() == x.size()) spec.series.push_back({"model", x, model, false});
            }
            plot(spec, "-" + std::to_string(idx++));
        }
    } else if (r.command == "solve") {
        PlotSpec spec;
        spec.title = "solution components";
        spec.xlabel = "r";
        spec.ylabel = "u_i(r)";
        spec.log_y = false;
        const auto mesh = r.outputs.at("mesh").get<std::vector<double>>();
        int i = 1;
        for (const auto& u : r.outputs.at("u")) spec.series.push_back({"u_" + std::to_string(i++), mesh, u, false});
        for (auto& s : spec.series) s.markers = false;
        plot(spec, "-u");
    } else if (r.command == "sweep") {
        const auto& pts = r.outputs.at("points");
        if (!pts.empty()) {
            std::vector<double> eps, phi;
            const int k = r.config.at("tower").at("k").get<int>();
            std::vector<std::vector<double>> d(k);
            for (const auto& p : pts) {
                eps.push_back(p.at("eps").get<double>());
                phi.push_back(p.at("corrector").at("phi_h1").get<double>());
                for (int j = 0; j < k; ++j) d[j].push_back(p.at("fit").at("d").at(j).get<double>());
            }
            PlotSpec ds;
            ds.title = "rate coefficients";
            ds.xlabel = "eps";
            ds.ylabel = "d_j";
            ds.log_y = false;
            for (int j = 0; j < k; ++j) ds.series.push_back({"d_" + std::to_string(j + 1), eps, d[j], true});
            if (r.outputs.contains("d_star")) {
                for (int j = 0; j < k; ++j) {
                    const double v = r.outputs.at("d_star").at(j).get<double>();
                    ds.series.push_back({"d*_" + std::to_string(j + 1), {eps.front(), eps.back()}, {v, v}, false});
                }
            }
            plot(ds, "-d");
            PlotSpec ps;
            ps.title = "corrector norm";
            ps.xlabel = "eps";
            ps.ylabel = "||phi||";
            ps.series.push_back({"||phi||_H1", eps, phi, true});
            plot(ps, "-phi");
            const fs::path csv = dir / (stem + ".csv");
            std::ofstream(csv) << sweep_csv(r);
            out.push_back(csv);
        }
    }
    return out;
}

PersistedRun persist_run(const RunRecord& record, const fs::path& dir) {
    PersistedRun p;
    p.record = save_record(record, dir);
    p.artifacts = write_artifacts(record, dir, p.record.stem().string());
    return p;
}

std::string cmd_report(const fs::path& dir) {
    const auto records = load_records(dir);
    std::ostringstream o;
    o << "# Run report\n\n";
    if (records.empty()) {
        o << "no records in " << dir.string() << "\n";
    } else {
        std::vector<std::string> versions;
        for (const auto& [_, r] : records) {
            if (std::find(versions.begin(), versions.end(), r.tool_version) == versions.end()) {
                versions.push_back(r.tool_version);
            }
        }
        if (versions.size() > 1) {
            o << "> **Warning:** records come from different tool versions:";
            for (const auto& v : versions) o << ' ' << v;
            o << "\n\n";
        }

        o << "## Pass/fail matrix\n\n| criterion | verdicts | status |\n|---|---|---|\n";
        for (int c = 1; c <= 12; ++c) {
            int n = 0, passed = 0;
            for (const auto& [_, r] : records) {
                for (const auto& v : r.verdicts) {
                    if (v.criterion == std::to_string(c)) {
                        ++n;
                        passed += v.pass;
                    }
                }
            }
            o << "| " << c << " | " << n << " | "
              << (n == 0 ? "not run" : (passed == n ? "pass" : "FAIL (" + std::to_string(n - passed) + " failed)"))
              << " |\n";
        }

        o << "\n## Fitted exponents\n\n| lemma | criterion | exponent | target | tolerance | result |\n|---|---|---|---|---|---|\n";
        for (const auto& [_, r] : records) {
            if (r.command != "verify") continue;
            for (const auto& rep : r.outputs.at("reports")) {
                if (!rep.contains("fit")) continue;
                o << "| " << rep.at("name").get<std::string>() << " | " << rep.at("criterion").get<std::string>()
                  << " | " << fmt(rep.at("fit").at("exponent").get<double>(), 5) << " | "
                  << fmt(rep.at("target").get<double>(), 5) << " | " << fmt(rep.at("tolerance").get<double>(), 3)
                  << " | " << (rep.at("pass").get<bool>() ? "pass" : "FAIL") << " |\n";
            }
        }

        for (const auto& [_, r] : records) {
            if (r.command == "constants") {
                o << "\n## Constants\n\n| constant | quadrature | closed form |\n|---|---|---|\n";
                for (const char* name : {"A", "B", "Gamma"}) {
                    o << "| " << name << " | " << fmt(r.outputs.at(name).get<double>(), 15) << " | "
                      << fmt(r.outputs.at(std::string(name) + "_exact").get<double>(), 15) << " |\n";
                }
            }
            if (r.command == "sweep") {
                o << "\n## Sweep trajectory\n\n| eps | d_j | ‖phi‖ | ‖phi‖/delta_1 | sigma_min |\n|---|---|---|---|---|\n";
                for (const auto& p : r.outputs.at("points")) {
                    std::string d;
                    for (const auto& v : p.at("fit").at("d")) d += (d.empty() ? "" : ", ") + fmt(v.get<double>(), 6);
                    o << "| " << fmt(p.at("eps").get<double>(), 3) << " | " << d << " | "
                      << fmt(p.at("corrector").at("phi_h1").get<double>(), 4) << " | "
                      << fmt(p.at("corrector").at("over_delta1").get<double>(), 4) << " | "
                      << (p.contains("sigma_min") ? fmt(p.at("sigma_min").at("projected").get<double>(), 4) : "-")
                      << " |\n";
                }
                if (r.outputs.contains("failed_eps")) {
                    o << "\nSweep stopped at eps = " << fmt(r.outputs.at("failed_eps").get<double>(), 3) << ": "
                      << r.outputs.at("failure").get<std::string>() << "\n";
                }
            }
        }

        o << "\n## Verdicts\n\n| record | criterion | check | result | detail |\n|---|---|---|---|---|\n";
        for (const auto& [path, r] : records) {
            for (const auto& v : r.verdicts) {
                o << "| " << path.filename().string() << " | " << v.criterion << " | " << v.name << " | "
                  << (v.pass ? "pass" : "FAIL") << " | " << v.detail << " |\n";
            }
        }
    }
    std::ofstream(dir / "report.md") << o.str();
    return o.str();
}

}  // namespace fountain
