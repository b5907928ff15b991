#include "fountain/reduced/psi.hpp"

#include <cmath>
#include <future>
#include <stdexcept>

#include "fountain/core/bubble.hpp"
#include "fountain/core/constants.hpp"
#include "fountain/core/error.hpp"
#include "fountain/quadrature/radial.hpp"

namespace fountain {

namespace {

void require_positive(const PsiCoefficients& c, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != c.k) throw PreconditionError("Psi: x must have k entries");
    for (double v : x) {
        if (!(v > 0.0)) throw PreconditionError("Psi: x must be positive");
    }
}

}  // namespace

PsiCoefficients psi_coefficients(int k, double beta, double R) {
    if (k < 1) throw PreconditionError("psi_coefficients: k must be positive");
    if (k > 1 && !(beta < 0.0)) throw PreconditionError("psi_coefficients: competitive coupling beta < 0 required");
    const UniversalConstants uc;
    PsiCoefficients c;
    c.k = k;
    c.a1 = uc.A_exact * uc.A_exact * robin_ball_center(R) / 2.0;
    c.a2 = uc.Gamma_exact / 2.0;
    c.a3 = std::abs(beta) * uc.interaction_exact / (2.0 * (k + 1));
    return c;
}

double psi_eval(const PsiCoefficients& c, const std::vector<double>& x) {
    require_positive(c, x);
    double s = c.a1 * x.front() + c.a2 / x.back();
    for (int i = 0; i + 1 < c.k; ++i) s += c.a3 * x[i + 1] / x[i];
    return s;
}

std::vector<double> psi_grad(const PsiCoefficients& c, const std::vector<double>& x) {
    require_positive(c, x);
    const int k = c.k;
    std::vector<double> g(k, 0.0);
    g[0] += c.a1;
    g[k - 1] += -c.a2 / (x[k - 1] * x[k - 1]);
    for (int i = 0; i + 1 < k; ++i) {
        g[i] += -c.a3 * x[i + 1] / (x[i] * x[i]);
        g[i + 1] += c.a3 / x[i];
    }
    return g;
}

Eigen::MatrixXd psi_hess(const PsiCoefficients& c, const std::vector<double>& x) {
    require_positive(c, x);
    const int k = c.k;
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(k, k);
    H(k - 1, k - 1) += 2.0 * c.a2 / std::pow(x[k - 1], 3);
    for (int i = 0; i + 1 < k; ++i) {
        H(i, i) += 2.0 * c.a3 * x[i + 1] / std::pow(x[i], 3);
        H(i, i + 1) += -c.a3 / (x[i] * x[i]);
        H(i + 1, i) += -c.a3 / (x[i] * x[i]);
    }
    return H;
}

ClosedFormMinimizer minimizer_closed_form(const PsiCoefficients& c) {
    const int k = c.k;
    const double k1 = k + 1.0;
    ClosedFormMinimizer out;
    if (k == 1) {
        out.x = {std::sqrt(c.a2 / c.a1)};
    } else {
        for (int i = 1; i <= k; ++i) {
            out.x.push_back(std::pow(c.a2 / c.a3, i / k1) * std::pow(c.a3 / c.a1, (k1 - i) / k1));
        }
    }
    for (double v : out.x) out.d.push_back(std::sqrt(v));
    // The theorem's form in terms of A^2 tau(0) = 2 a1, Gamma = 2 a2 and
    // |beta| alpha4^4 |S^3| / (k+1) = 2 a3.
    for (int j = 1; j <= k; ++j) {
        const double e = j / (2.0 * k1);
        double dj = std::pow(2.0 * c.a2, e) * std::pow(2.0 * c.a1, e - 0.5);
        if (k > 1) dj *= std::pow(2.0 * c.a3, 0.5 - j / k1);
        if (k == 1) dj = std::pow(c.a2 / c.a1, 0.25);
        out.d_theorem.push_back(dj);
        out.max_relative_gap = std::max(out.max_relative_gap, std::abs(dj - out.d[j - 1]) / out.d[j - 1]);
    }
    if (out.max_relative_gap > 1e-12) {
        throw std::logic_error("minimizer_closed_form: theorem and lemma expressions disagree");
    }
    out.psi_value = psi_eval(c, out.x);
    return out;
}

ReducedPoint psi_minimize_numeric(const PsiCoefficients& c, const std::vector<double>& x0) {
    require_positive(c, x0);
    if (c.k > 1 && !(c.a3 > 0.0)) throw PreconditionError("psi_minimize_numeric: a3 must be positive");
    const int k = c.k;
    Eigen::VectorXd y(k);
    for (int i = 0; i < k; ++i) y[i] = std::log(x0[i]);
    auto to_x = [&](const Eigen::VectorXd& yy) {
        std::vector<double> x(k);
        for (int i = 0; i < k; ++i) x[i] = std::exp(yy[i]);
        return x;
    };

    ReducedPoint out;
    std::vector<NewtonTraceEntry> trace;
    for (int it = 0; it <= 200; ++it) {
        const auto x = to_x(y);
        const double f = psi_eval(c, x);
        const auto g = psi_grad(c, x);
        Eigen::VectorXd gy(k);
        for (int i = 0; i < k; ++i) gy[i] = x[i] * g[i];
        trace.push_back({it, gy.norm(), 0.0});
        if (gy.norm() < 1e-12 * f) {
            out.x = x;
            out.psi_value = f;
            out.gradient = g;
            out.iterations = it;
            out.hessian_min_eigenvalue =
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(psi_hess(c, x)).eigenvalues().minCoeff();
            return out;
        }
        if (it == 200) break;
        const auto H = psi_hess(c, x);
        Eigen::MatrixXd Hy(k, k);
        for (int a = 0; a < k; ++a) {
            for (int b = 0; b < k; ++b) Hy(a, b) = x[a] * H(a, b) * x[b];
            Hy(a, a) += gy[a];
        }
        Eigen::VectorXd step = -Hy.ldlt().solve(gy);
        if (!step.allFinite() || step.dot(gy) >= 0.0) step = -gy;
        double t = 1.0;
        while (t > 1e-16) {
            const Eigen::VectorXd yt = y + t * step;
            if (psi_eval(c, to_x(yt)) <= f + 1e-4 * t * step.dot(gy) || gy.norm() < 1e-9 * f) {
                y = yt;
                break;
            }
            t *= 0.5;
        }
        trace.back().step_length = t;
    }
    throw NonConvergenceError("psi_minimize_numeric: no convergence within 200 iterations", trace);
}

ReducedEnergy reduced_energy_eval(const TowerConfig& cfg, int ppd) {
    check_tower_config(cfg);
    const int m = cfg.m();
    const int k = cfg.k();
    const auto sched = rate_schedule(cfg);
    const auto owner = component_of_bubble(cfg.partition);
    const auto mesh = build_mesh(cfg.eps, cfg.R, sched.deltas, ppd);
    std::vector<ProjectedBubble> pu;
    for (int l = 0; l < k; ++l) pu.push_back(project_bubble(Bubble{sched.deltas[l]}, cfg.eps, cfg.R));

    auto values = [&](double r, std::vector<double>& u, std::vector<double>& du) {
        u.assign(m, 0.0);
        du.assign(m, 0.0);
        for (int l = 0; l < k; ++l) {
            u[owner[l]] += pu[l].value(r);
            du[owner[l]] += pu[l].radial_derivative(r);
        }
        for (int i = 0; i < m; ++i) {
            const double s = 1.0 / std::sqrt(cfg.mu[i]);
            u[i] *= s;
            du[i] *= s;
        }
    };
    ReducedEnergy out;
    std::vector<double> u, du;
    out.gradient = integrate_radial(
        [&](double r) {
            values(r, u, du);
            double s = 0.0;
            for (int i = 0; i < m; ++i) s += 0.5 * du[i] * du[i];
            return s;
        },
        *mesh);
    out.quartic = integrate_radial(
        [&](double r) {
            values(r, u, du);
            double s = 0.0;
            for (int i = 0; i < m; ++i) {
                const double p = std::max(u[i], 0.0);
                s += 0.25 * cfg.mu[i] * p * p * p * p;
            }
            return s;
        },
        *mesh);
    out.coupling = integrate_radial(
        [&](double r) {
            values(r, u, du);
            double s = 0.0;
            for (int i = 0; i < m; ++i) {
                for (int j = i + 1; j < m; ++j) s -= 0.5 * cfg.coupling_between(i, j) * u[i] * u[i] * u[j] * u[j];
            }
            return s;
        },
        *mesh);
    out.value = out.gradient - out.quartic + out.coupling;
    return out;
}

AsymptoticReport expansion_check(const TowerConfig& cfg, const std::vector<double>& eps_list, int ppd,
                                 double tolerance) {
    if (eps_list.size() < 2) throw PreconditionError("expansion_check: need at least two eps values");
    const int k = cfg.k();
    const double k1 = k + 1.0;
    const UniversalConstants uc;
    std::vector<double> x2;
    for (double d : cfg.d) x2.push_back(d * d);
    PsiCoefficients c = psi_coefficients(k, k > 1 ? cfg.beta : -1.0, cfg.R);
    if (k == 1) c.a3 = 0.0;
    const double limit = psi_eval(c, x2);

    std::vector<std::future<double>> jobs;
    for (double eps : eps_list) {
        jobs.push_back(std::async(std::launch::async, [cfg, eps, ppd] {
            TowerConfig at = cfg;
            at.eps = eps;
            return reduced_energy_eval(at, ppd).value;
        }));
    }
    AsymptoticReport rep;
    rep.name = "reduced-expansion";
    rep.criterion = "8";
    rep.parameter = "eps";
    rep.target = limit;
    rep.tolerance = tolerance;
    for (std::size_t n = 0; n < eps_list.size(); ++n) {
        const double eps = eps_list[n];
        const double J = jobs[n].get();
        const double scale = std::pow(eps, 2.0 / k1) * std::pow(std::log(1.0 / eps), (k - 1.0) / k1);
        rep.x.push_back(eps);
        rep.measured.push_back((J - k * uc.B_exact / 4.0) / scale);
        rep.model.push_back(limit);
    }
    std::size_t smallest = 0;
    std::size_t largest = 0;
    for (std::size_t n = 1; n < rep.x.size(); ++n) {
        if (rep.x[n] < rep.x[smallest]) smallest = n;
        if (rep.x[n] > rep.x[largest]) largest = n;
    }
    const double gap_small = std::abs(rep.measured[smallest] / limit - 1.0);
    const double gap_large = std::abs(rep.measured[largest] / limit - 1.0);
    rep.pass = gap_small <= tolerance && gap_small < gap_large;
    rep.notes.push_back("relative gap at smallest eps: " + std::to_string(gap_small));
    rep.notes.push_back("relative gap at largest eps: " + std::to_string(gap_large));
    return rep;
}

}  // namespace fountain
