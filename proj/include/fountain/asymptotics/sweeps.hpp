#pragma once

#include <functional>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fountain/asymptotics/fit.hpp"
#include "fountain/core/error.hpp"

namespace fountain {

/// A geometric parameter sweep with its fixed context.
struct SweepSpec {
    std::string parameter;  ///< "eps", "delta", "delta-ratio", ...
    std::vector<double> values;
    std::map<std::string, double> context;
};

/// values[n] = start * ratio^n, n < count.
SweepSpec geometric_sweep(std::string parameter, double start, double ratio, int count);

/// At least 4 positive values with a constant ratio (to 1e-9 relative).
void validate_sweep(const SweepSpec& spec);

/// Evaluates f at every value concurrently; the output keeps the input order.
/// The first exception (in input order) is rethrown.
template <class F>
std::vector<double> evaluate_sweep(const std::vector<double>& values, F f) {
    std::vector<std::future<double>> jobs;
    jobs.reserve(values.size());
    for (double v : values) jobs.push_back(std::async(std::launch::async, f, v));
    std::vector<double> out;
    out.reserve(values.size());
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

/// Unknown name passed to verify_lemma; what() lists the valid names.
class UnknownLemmaError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// Per-run changes to a lemma's default sweep. `params` overrides named scalar
/// context entries (e.g. "p", "q", "rho1", "eps", "R", "delta"); `values`
/// replaces the sweep sequence.
struct LemmaOverrides {
    std::map<std::string, double> params;
    std::optional<std::vector<double>> values;
};

/// Registered names, in a fixed order.
const std::vector<std::string>& lemma_names();

/// Runs the named verification sweep(s). Several reports are returned when a
/// lemma has more than one case (e.g. A3-lq for each q). Throws
/// UnknownLemmaError for unregistered names and PreconditionError for invalid
/// overrides (unknown key, violated exponent constraint, bad sweep).
std::vector<AsymptoticReport> verify_lemma(const std::string& name, const LemmaOverrides& overrides = {},
                                           int ppd = 64);

}  // namespace fountain
