#include "fountain/asymptotics/fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "fountain/core/error.hpp"

namespace fountain {

ExponentFit fit_exponent(const std::vector<double>& x, const std::vector<double>& y, LogMode mode,
                         double log_power) {
    if (x.size() != y.size()) throw PreconditionError("fit_exponent: x and y differ in length");
    if (x.size() < 4) throw PreconditionError("fit_exponent: need at least 4 points");
    const auto n = static_cast<Eigen::Index>(x.size());
    const int cols = mode == LogMode::Fitted ? 3 : 2;
    Eigen::MatrixXd M(n, cols);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0) || !std::isfinite(x[i]) || !std::isfinite(y[i])) {
            throw PreconditionError("fit_exponent: data must be positive and finite");
        }
        if (mode != LogMode::None && !(x[i] < 1.0)) {
            throw PreconditionError("fit_exponent: log factor needs x < 1");
        }
        const double lx = std::log(x[i]);
        M(i, 0) = lx;
        M(i, 1) = 1.0;
        b[i] = std::log(y[i]);
        if (mode == LogMode::Fixed) b[i] -= log_power * std::log(-lx);
        if (mode == LogMode::Fitted) M(i, 2) = std::log(-lx);
    }
    const Eigen::VectorXd coef = M.colPivHouseholderQr().solve(b);
    ExponentFit fit;
    fit.exponent = coef[0];
    fit.constant = std::exp(coef[1]);
    fit.log_power = mode == LogMode::Fitted ? coef[2] : (mode == LogMode::Fixed ? log_power : 0.0);
    fit.residual = std::sqrt((M * coef - b).squaredNorm() / static_cast<double>(n));
    fit.points_used = static_cast<int>(n);
    return fit;
}

ExponentFit fit_exponent_windowed(const std::vector<double>& x, const std::vector<double>& y, LogMode mode,
                                  double log_power, double max_residual) {
    auto fit = fit_exponent(x, y, mode, log_power);
    if (fit.residual <= max_residual || x.size() < 5) return fit;
    const auto largest = std::max_element(x.begin(), x.end()) - x.begin();
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (static_cast<std::ptrdiff_t>(i) == largest) continue;
        xs.push_back(x[i]);
        ys.push_back(y[i]);
    }
    auto refit = fit_exponent(xs, ys, mode, log_power);
    refit.excluded_x.push_back(x[static_cast<std::size_t>(largest)]);
    return refit;
}

}  // namespace fountain
