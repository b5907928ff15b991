#pragma once

#include <string>
#include <vector>

namespace fountain {

/// How a logarithmic factor in the target law y ~ c x^p (log 1/x)^s is handled.
enum class LogMode {
    None,   ///< s = 0
    Fixed,  ///< s is known; log(y) - s log log(1/x) is regressed on log x
    Fitted  ///< s is a second regressor
};

struct ExponentFit {
    double exponent = 0.0;
    double constant = 0.0;
    double log_power = 0.0;  ///< s (fixed or fitted)
    double residual = 0.0;   ///< RMS of the log-space residuals
    int points_used = 0;
    std::vector<double> excluded_x;
};

/// Least squares on (log x, log y), optionally with log log(1/x) as a second
/// regressor. Requires at least 4 points, positive data, and x < 1 whenever a
/// log factor is involved. Throws PreconditionError otherwise.
ExponentFit fit_exponent(const std::vector<double>& x, const std::vector<double>& y, LogMode mode = LogMode::None,
                         double log_power = 0.0);

/// fit_exponent, refitted once without the point of largest x when the first
/// fit's residual exceeds `max_residual` (pre-asymptotic pollution) and at
/// least 4 points remain; the exclusion is recorded in excluded_x.
ExponentFit fit_exponent_windowed(const std::vector<double>& x, const std::vector<double>& y,
                                  LogMode mode = LogMode::None, double log_power = 0.0, double max_residual = 0.02);

/// Measured quantities of one sweep with their fitted law and verdict.
struct AsymptoticReport {
    std::string name;       ///< e.g. "A3-lq(q=3)"
    std::string criterion;  ///< acceptance criterion the verdict instantiates
    std::string parameter;  ///< swept parameter
    std::vector<double> x;
    std::vector<double> measured;
    std::vector<double> model;  ///< leading-order model per point (may be empty)
    bool has_fit = false;
    ExponentFit fit;
    double target = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::vector<std::string> notes;
};

}  // namespace fountain
