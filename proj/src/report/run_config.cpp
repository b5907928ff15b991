#include "fountain/report/run_config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "fountain/core/error.hpp"
#include "fountain/reduced/psi.hpp"

namespace fountain {

using nlohmann::json;

namespace {

const std::set<std::string> kSections = {"domain", "sweep",  "tower",      "physics", "rates", "solver",
                                         "quadrature", "output", "seed", "tolerances", "lemma"};

template <class T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw PreconditionError("config: bad value for " + where + "." + key + ": " + e.what());
    }
}

const json& section(const json& j, const char* name) {
    static const json empty = json::object();
    if (!j.contains(name)) return empty;
    const json& s = j.at(name);
    if (!s.is_object()) throw PreconditionError(std::string("config: section '") + name + "' must be an object");
    return s;
}

void check_keys(const json& s, const std::string& name, const std::set<std::string>& allowed) {
    for (const auto& [key, _] : s.items()) {
        if (!allowed.count(key)) throw PreconditionError("config: unknown key " + name + "." + key);
    }
}

Partition to_partition(const RunConfig& c) {
    if (c.partition.empty()) return odd_even_partition(c.k);
    Partition p;
    p.k = c.k;
    p.m = c.m;
    p.groups = c.partition;
    return p;
}

}  // namespace

RunConfig parse_run_config(const json& j) {
    if (!j.is_object()) throw PreconditionError("config: top level must be an object");
    for (const auto& [key, _] : j.items()) {
        if (!kSections.count(key)) throw PreconditionError("config: unknown section '" + key + "'");
    }
    RunConfig c;

    const json& domain = section(j, "domain");
    check_keys(domain, "domain", {"R", "eps"});
    read(domain, "R", c.R, "domain");
    read(domain, "eps", c.eps, "domain");

    const json& sweep = section(j, "sweep");
    check_keys(sweep, "sweep", {"eps_list"});
    read(sweep, "eps_list", c.eps_list, "sweep");

    const json& tower = section(j, "tower");
    check_keys(tower, "tower", {"k", "m", "partition"});
    read(tower, "k", c.k, "tower");
    read(tower, "m", c.m, "tower");
    read(tower, "partition", c.partition, "tower");
    if (!tower.contains("m") && c.partition.empty()) c.m = c.k == 1 ? 1 : 2;
    if (!tower.contains("m") && !c.partition.empty()) c.m = static_cast<int>(c.partition.size());

    const json& physics = section(j, "physics");
    check_keys(physics, "physics", {"beta", "mu"});
    read(physics, "beta", c.beta, "physics");
    read(physics, "mu", c.mu, "physics");

    const json& rates = section(j, "rates");
    check_keys(rates, "rates", {"d"});
    if (rates.contains("d")) {
        const json& d = rates.at("d");
        if (d.is_string()) {
            if (d.get<std::string>() != "star") throw PreconditionError("config: rates.d must be \"star\" or a list");
            c.d_star = true;
        } else {
            read(rates, "d", c.d, "rates");
            c.d_star = false;
        }
    }

    const json& solver = section(j, "solver");
    check_keys(solver, "solver", {"tol", "max_iters", "strategy", "sigma_min"});
    read(solver, "tol", c.solver.tol, "solver");
    read(solver, "max_iters", c.solver.max_iters, "solver");
    read(solver, "strategy", c.solver.strategy, "solver");
    read(solver, "sigma_min", c.solver.sigma_min, "solver");

    const json& quad = section(j, "quadrature");
    check_keys(quad, "quadrature", {"points_per_decade"});
    read(quad, "points_per_decade", c.points_per_decade, "quadrature");

    const json& output = section(j, "output");
    check_keys(output, "output", {"dir"});
    read(output, "dir", c.out_dir, "output");

    read(j, "seed", c.seed, "");

    const json& tol = section(j, "tolerances");
    check_keys(tol, "tolerances",
               {"newton_max_iters_pass", "corrector_slope_margin", "sigma_min_factor", "unprojected_decay",
                "minimizer_gradient", "minimizer_agreement", "theorem_agreement", "constants_relative",
                "constants_identity"});
    auto& t = c.tolerances;
    read(tol, "newton_max_iters_pass", t.newton_max_iters_pass, "tolerances");
    read(tol, "corrector_slope_margin", t.corrector_slope_margin, "tolerances");
    read(tol, "sigma_min_factor", t.sigma_min_factor, "tolerances");
    read(tol, "unprojected_decay", t.unprojected_decay, "tolerances");
    read(tol, "minimizer_gradient", t.minimizer_gradient, "tolerances");
    read(tol, "minimizer_agreement", t.minimizer_agreement, "tolerances");
    read(tol, "theorem_agreement", t.theorem_agreement, "tolerances");
    read(tol, "constants_relative", t.constants_relative, "tolerances");
    read(tol, "constants_identity", t.constants_identity, "tolerances");

    const json& lemma = section(j, "lemma");
    check_keys(lemma, "lemma", {"params", "values"});
    read(lemma, "params", c.lemma_params, "lemma");
    if (lemma.contains("values")) {
        std::vector<double> v;
        read(lemma, "values", v, "lemma");
        c.lemma_values = v;
    }

    validate_run_config(c);
    return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("config: cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw PreconditionError("config: " + path.string() + " is not valid JSON: " + e.what());
    }
    return parse_run_config(j);
}

json to_json(const RunConfig& c) {
    json j;
    j["domain"] = {{"R", c.R}, {"eps", c.eps}};
    j["sweep"] = {{"eps_list", c.eps_list}};
    j["tower"] = {{"k", c.k}, {"m", c.m}, {"partition", c.partition}};
    j["physics"] = {{"beta", c.beta}, {"mu", c.mu}};
    j["rates"] = json::object();
    if (c.d_star) {
        j["rates"]["d"] = "star";
    } else {
        j["rates"]["d"] = c.d;
    }
    j["solver"] = {{"tol", c.solver.tol},
                   {"max_iters", c.solver.max_iters},
                   {"strategy", c.solver.strategy},
                   {"sigma_min", c.solver.sigma_min}};
    j["quadrature"] = {{"points_per_decade", c.points_per_decade}};
    j["output"] = {{"dir", c.out_dir}};
    j["seed"] = c.seed;
    const auto& t = c.tolerances;
    j["tolerances"] = {{"newton_max_iters_pass", t.newton_max_iters_pass},
                       {"corrector_slope_margin", t.corrector_slope_margin},
                       {"sigma_min_factor", t.sigma_min_factor},
                       {"unprojected_decay", t.unprojected_decay},
                       {"minimizer_gradient", t.minimizer_gradient},
                       {"minimizer_agreement", t.minimizer_agreement},
                       {"theorem_agreement", t.theorem_agreement},
                       {"constants_relative", t.constants_relative},
                       {"constants_identity", t.constants_identity}};
    j["lemma"] = {{"params", c.lemma_params}};
    if (c.lemma_values) j["lemma"]["values"] = *c.lemma_values;
    return j;
}

void validate_run_config(const RunConfig& c) {
    if (c.k < 1) throw PreconditionError("config: tower.k must be positive");
    if (c.k > kMaxBubbles) throw EnvelopeError("config: tower.k exceeds the supported maximum of 4");
    if (c.m < 1) throw PreconditionError("config: tower.m must be positive");
    if (c.partition.empty() && c.m != odd_even_partition(c.k).m) {
        throw PreconditionError("config: tower.partition is required unless m matches the odd/even default");
    }
    const auto check = validate_partition(to_partition(c));
    if (!check.ok()) throw PreconditionError("config: invalid tower.partition: " + check.message);
    if (!c.mu.empty() && static_cast<int>(c.mu.size()) != c.m) {
        throw PreconditionError("config: physics.mu needs one entry per component");
    }
    for (double v : c.mu) {
        if (!(v > 0.0)) throw PreconditionError("config: physics.mu must be positive");
    }
    if (!c.d_star) {
        if (static_cast<int>(c.d.size()) != c.k) throw PreconditionError("config: rates.d needs k entries");
        for (double v : c.d) {
            if (!(v > 0.0)) throw PreconditionError("config: rates.d must be positive");
        }
    }
    if (!(c.R > 0.0)) throw PreconditionError("config: domain.R must be positive");
    auto check_eps = [&](double eps) {
        if (!(eps > 0.0 && eps < c.R)) throw PreconditionError("config: eps must lie in (0, R)");
        if (eps < kMinEps) throw EnvelopeError("config: eps below the supported minimum 1e-9");
    };
    check_eps(c.eps);
    for (double e : c.eps_list) check_eps(e);
    for (std::size_t n = 1; n < c.eps_list.size(); ++n) {
        if (!(c.eps_list[n] < c.eps_list[n - 1])) throw PreconditionError("config: sweep.eps_list must be decreasing");
    }
    if (c.points_per_decade < 4) throw PreconditionError("config: points_per_decade must be at least 4");
    if (c.points_per_decade > kMaxPointsPerDecade) {
        throw EnvelopeError("config: points_per_decade exceeds the supported maximum of 256");
    }
    if (!(c.solver.tol > 0.0)) throw PreconditionError("config: solver.tol must be positive");
    if (c.solver.max_iters < 1) throw PreconditionError("config: solver.max_iters must be positive");
    if (c.solver.strategy != "direct" && c.solver.strategy != "reduced" && c.solver.strategy != "automatic") {
        throw PreconditionError("config: solver.strategy must be direct, reduced or automatic");
    }
}

std::vector<double> reduced_minimizer_d(int k, double beta, double R) {
    if (k == 1) {
        PsiCoefficients c = psi_coefficients(1, beta < 0.0 ? beta : -1.0, R);
        return minimizer_closed_form(c).d;
    }
    return minimizer_closed_form(psi_coefficients(k, beta, R)).d;
}

TowerConfig tower_config(const RunConfig& c, double eps) {
    TowerConfig t;
    t.R = c.R;
    t.eps = eps;
    t.partition = to_partition(c);
    t.beta = c.beta;
    t.mu = c.mu.empty() ? std::vector<double>(c.m, 1.0) : c.mu;
    t.d = c.d_star ? reduced_minimizer_d(c.k, c.beta, c.R) : c.d;
    return t;
}

TowerConfig tower_config(const RunConfig& c) { return tower_config(c, c.eps); }

NewtonOptions newton_options(const RunConfig& c) {
    NewtonOptions o;
    o.tol = c.solver.tol;
    o.max_iters = c.solver.max_iters;
    if (c.solver.strategy == "direct") o.strategy = NewtonStrategy::Direct;
    if (c.solver.strategy == "reduced") o.strategy = NewtonStrategy::Reduced;
    if (c.solver.strategy == "automatic") o.strategy = NewtonStrategy::Automatic;
    return o;
}

}  // namespace fountain
