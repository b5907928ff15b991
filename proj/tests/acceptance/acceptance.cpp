// Acceptance run: one PASS/FAIL line per criterion. Each criterion's wall time
// is part of its verdict. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fountain/asymptotics/lemmas.hpp"
#include "fountain/asymptotics/sweeps.hpp"
#include "fountain/core/constants.hpp"
#include "fountain/quadrature/radial.hpp"
#include "fountain/reduced/psi.hpp"
#include "fountain/report/commands.hpp"
#include "fountain/solver/continuation.hpp"
#include "fountain/solver/rates.hpp"
#include "fountain/solver/spectral.hpp"
#include "fountain/solver/system.hpp"

#ifndef FOUNTAIN_SOURCE_DIR
#define FOUNTAIN_SOURCE_DIR "."
#endif

using namespace fountain;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v, int precision = 4) {
    std::ostringstream s;
    s.precision(precision);
    s << v;
    return s.str();
}

TowerConfig k2(double eps) {
    TowerConfig cfg;
    cfg.eps = eps;
    cfg.partition = odd_even_partition(2);
    cfg.mu = {1.0, 1.0};
    cfg.d = minimizer_closed_form(psi_coefficients(2, -1.0, 1.0)).d;
    return cfg;
}

double relative_h1_gap(const std::vector<RadialGridFunction>& a, const std::vector<RadialGridFunction>& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto diff = a[i];
        for (std::size_t p = 0; p < diff.size(); ++p) diff.values[p] -= b[i].values[p];
        num += std::pow(h1_norm(diff), 2);
        den += std::pow(h1_norm(b[i]), 2);
    }
    return std::sqrt(num / den);
}

std::string describe(const AsymptoticReport& r) {
    std::string s = r.name + ": ";
    if (r.has_fit) {
        s += "slope " + fmt(r.fit.exponent, 5) + " (target " + fmt(r.target, 5) + " +- " + fmt(r.tolerance, 3) + ")";
        if (!r.fit.excluded_x.empty()) s += " [largest point excluded]";
    } else {
        s += "values";
        for (double m : r.measured) s += " " + fmt(m, 5);
    }
    return s + (r.pass ? "" : " FAIL");
}

Outcome all_pass(const std::vector<AsymptoticReport>& reps) {
    Outcome o{true, ""};
    for (const auto& r : reps) {
        o.pass = o.pass && r.pass;
        o.detail += (o.detail.empty() ? "" : "; ") + describe(r);
    }
    return o;
}

Outcome criterion1() {
    const auto c = compute_constants();
    const double e = std::max({std::abs(c.A / c.A_exact - 1), std::abs(c.B / c.B_exact - 1),
                               std::abs(c.Gamma / c.Gamma_exact - 1)});
    const double id = std::max(std::abs(c.A / (c.alpha4 / c.gamma4) - 1), std::abs(c.A * c.A * c.gamma4 / c.Gamma - 1));
    return {e <= 1e-8 && id <= 1e-10, "max rel. error " + fmt(e, 3) + ", identities " + fmt(id, 3)};
}

Outcome criterion2() { return all_pass(verify_lemma("A1-expansion")); }
Outcome criterion3() { return all_pass(verify_lemma("single-energy")); }

Outcome criterion4() {
    const auto r = verify_lemma("interaction-constant").front();
    return {r.pass, "ratios at 1e2, 1e3, 1e4: " + fmt(r.measured[0], 5) + ", " + fmt(r.measured[1], 5) + ", " +
                        fmt(r.measured[2], 5) + " (band [0.9, 1.1] at 1e3; closer at 1e4)"};
}

Outcome criterion5() {
    std::vector<AsymptoticReport> reps;
    for (const char* name : {"A3-lq", "A4-pq", "A6-triple"}) {
        auto r = verify_lemma(name);
        reps.insert(reps.end(), r.begin(), r.end());
    }
    return all_pass(reps);
}

Outcome criterion6() { return all_pass(verify_lemma("remainder-norm")); }

Outcome criterion7() {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> start(std::log(0.1), std::log(10.0));
    double grad = 0.0, agree = 0.0, theorem = 0.0;
    for (int k = 1; k <= 6; ++k) {
        const auto c = psi_coefficients(k, -1.0, 1.0);
        const auto cf = minimizer_closed_form(c);
        double g2 = 0.0;
        for (double g : psi_grad(c, cf.x)) g2 += g * g;
        grad = std::max(grad, std::sqrt(g2) / cf.psi_value);
        theorem = std::max(theorem, cf.max_relative_gap);
        for (int s = 0; s < 20; ++s) {
            std::vector<double> x0(k);
            for (auto& v : x0) v = std::exp(start(rng));
            const auto p = psi_minimize_numeric(c, x0);
            for (int i = 0; i < k; ++i) agree = std::max(agree, std::abs(p.x[i] / cf.x[i] - 1.0));
        }
    }
    return {grad < 1e-10 && agree <= 1e-8 && theorem <= 1e-12,
            "grad/Psi " + fmt(grad, 3) + ", multi-start " + fmt(agree, 3) + ", theorem " + fmt(theorem, 3)};
}

Outcome criterion8() {
    const auto rep = expansion_check(k2(1e-5), {1e-4, 1e-5, 1e-6, 1e-7});
    return {rep.pass, "ratio/Psi(d*^2) at 1e-4: " + fmt(rep.measured.front() / rep.target, 5) +
                          ", at 1e-7: " + fmt(rep.measured.back() / rep.target, 5)};
}

Outcome criterion9() {
    const auto s = newton_solve(k2(1e-5), 64);
    bool positive = true;
    for (const auto& u : s.u) {
        for (std::size_t p = 1; p + 1 < u.size(); ++p) positive = positive && u.values[p] > 0.0;
    }
    auto a = k2(1e-5);
    a.mu = {4.0, 1.0};
    auto b = k2(1e-5);
    b.coupling = {0.0, -1.0, -0.25, 0.0};  // beta / mu_j after u_i = mu_i^{-1/2} v_i
    const auto sa = newton_solve(a, 64);
    const auto sb = newton_solve(b, 64);
    auto scaled = sb.u;
    for (double& v : scaled[0].values) v *= 0.5;
    const double gap = relative_h1_gap(sa.u, scaled);
    const double rel = s.residual_h1 / s.ansatz_norm;
    return {s.converged && rel < 1e-10 && s.newton_iters <= 15 && positive && gap <= 1e-8,
            std::to_string(s.newton_iters) + " iterations, residual " + fmt(rel, 3) + ", positive " +
                (positive ? "yes" : "no") + ", mu-equivariance " + fmt(gap, 3)};
}

Outcome criterion10() {
    const auto cfg = k2(1e-6);
    const auto sweep = continuation_sweep(cfg, {1e-6, 1e-7, 1e-8}, 64);
    if (sweep.points.size() != 3) return {false, "sweep failed at eps " + fmt(sweep.failed_eps.value_or(0)) + ": " + sweep.failure};
    bool ok = true;
    std::string d;
    for (int j = 0; j < 2; ++j) {
        double prev = INFINITY;
        for (const auto& p : sweep.points) {
            const double gap = std::abs(p.fit.d[j] - cfg.d[j]);
            ok = ok && gap < prev;
            prev = gap;
            d += (d.empty() ? "" : " ") + fmt(gap, 3);
        }
        if (j == 0) d += " |";
    }
    std::vector<double> eps, phi;
    bool ratio_down = true;
    for (std::size_t n = 0; n < sweep.points.size(); ++n) {
        eps.push_back(sweep.points[n].eps);
        phi.push_back(sweep.points[n].corrector.phi_h1);
        if (n > 0) ratio_down = ratio_down && sweep.points[n].corrector.over_delta1 < sweep.points[n - 1].corrector.over_delta1;
    }
    const double slope = std::log(phi.front() / phi.back()) / std::log(eps.front() / eps.back());
    const double mean_x = (std::log(eps[0]) + std::log(eps[1]) + std::log(eps[2])) / 3;
    const double mean_y = (std::log(phi[0]) + std::log(phi[1]) + std::log(phi[2])) / 3;
    double sxy = 0, sxx = 0;
    for (int n = 0; n < 3; ++n) {
        sxy += (std::log(eps[n]) - mean_x) * (std::log(phi[n]) - mean_y);
        sxx += std::pow(std::log(eps[n]) - mean_x, 2);
    }
    const double fitted = sxy / sxx;
    (void)slope;
    return {ok && ratio_down && fitted >= 1.0 / 3.0 - 0.1,
            "|d_j - d_j*|: " + d + "; ||phi||/delta_1: " + fmt(sweep.points[0].corrector.over_delta1) + " -> " +
                fmt(sweep.points[2].corrector.over_delta1) + "; log-slope of ||phi|| " + fmt(fitted)};
}

Outcome criterion11() {
    const auto sweep = continuation_sweep(k2(1e-4), {1e-4, 1e-5, 1e-6, 1e-7}, 64);
    if (sweep.points.size() != 4) return {false, "sweep failed: " + sweep.failure};
    std::vector<double> proj, unproj;
    for (const auto& p : sweep.points) {
        const auto r = projected_linearization_sigma_min(p.state, p.fit.deltas);
        proj.push_back(r.projected);
        unproj.push_back(r.unprojected);
    }
    const double lo = *std::min_element(proj.begin(), proj.end());
    const double hi = *std::max_element(proj.begin(), proj.end());
    const double decay = unproj.front() / unproj.back();
    return {lo > 0.0 && hi / lo < 2.0 && decay > 10.0,
            "projected in [" + fmt(lo) + ", " + fmt(hi) + "], unprojected " + fmt(unproj.front(), 3) + " -> " +
                fmt(unproj.back(), 3) + " (decay " + fmt(decay, 3) + "x)"};
}

Outcome criterion12() {
    auto cfg = load_run_config(std::string(FOUNTAIN_SOURCE_DIR) + "/configs/k2-towers.json");
    const auto j1 = to_json(cfg);
    const bool roundtrip = to_json(parse_run_config(j1)).dump() == j1.dump();

    auto small = cfg;
    small.solver.sigma_min = false;
    const bool deterministic = same_results(cmd_solve(small), cmd_solve(small)) &&
                               same_results(cmd_minimize(small), cmd_minimize(small));

    double change = 0.0;
    for (double eps : {1e-5, 1e-7}) {
        const auto cfg64 = k2(eps);
        const auto f64 = extract_rates(newton_solve(cfg64, 64));
        const auto f128 = extract_rates(newton_solve(cfg64, 128));
        for (int j = 0; j < 2; ++j) change = std::max(change, std::abs(f128.d[j] / f64.d[j] - 1.0));
    }
    return {roundtrip && deterministic && change < 5e-3,
            std::string("round-trip ") + (roundtrip ? "yes" : "no") + ", deterministic " +
                (deterministic ? "yes" : "no") + ", mesh doubling changes d by " + fmt(100 * change, 3) + "%"};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "constants", 1, criterion1},          {2, "projection expansion", 5, criterion2},
        {3, "single-bubble energy", 5, criterion3}, {4, "interaction constant", 10, criterion4},
        {5, "appendix sweeps", 60, criterion5},   {6, "remainder norm", 120, criterion6},
        {7, "reduced minimiser", 1, criterion7},  {8, "reduced expansion", 120, criterion8},
        {9, "Newton solver", 30, criterion9},     {10, "concentration rates", 300, criterion10},
        {11, "linear theory", 180, criterion11},  {12, "infrastructure", 60, criterion12},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = dt < c.budget_s;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::printf("criterion %2d %s  %-22s %s | %.2f s (budget %g s%s)\n", c.id, pass ? "PASS" : "FAIL", c.name,
                    o.detail.c_str(), dt, c.budget_s, in_time ? "" : ", EXCEEDED");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
