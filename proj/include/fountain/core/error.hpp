#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fountain {

/// Raised when an operation is called outside its documented domain.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a requested run lies outside the supported numerical envelope
/// (too many bubbles, too small a hole, too fine a mesh).
class EnvelopeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A Gram or constraint matrix too ill-conditioned to trust.
class ConditioningError : public std::runtime_error {
public:
    ConditioningError(const std::string& what, double condition)
        : std::runtime_error(what), condition_(condition) {}
    double condition() const noexcept { return condition_; }

private:
    double condition_;
};

struct NewtonTraceEntry {
    int iteration = 0;
    double residual = 0.0;
    double step_length = 0.0;
};

class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& what, std::vector<NewtonTraceEntry> trace)
        : std::runtime_error(what), trace_(std::move(trace)) {}
    const std::vector<NewtonTraceEntry>& trace() const noexcept { return trace_; }

private:
    std::vector<NewtonTraceEntry> trace_;
};

class PositivityError : public std::runtime_error {
public:
    PositivityError(const std::string& what, int component, double radius, double value)
        : std::runtime_error(what), component_(component), radius_(radius), value_(value) {}
    int component() const noexcept { return component_; }
    double radius() const noexcept { return radius_; }
    double value() const noexcept { return value_; }

private:
    int component_;
    double radius_;
    double value_;
};

class FitError : public std::runtime_error {
public:
    FitError(const std::string& what, double relative_residual)
        : std::runtime_error(what), relative_residual_(relative_residual) {}
    double relative_residual() const noexcept { return relative_residual_; }

private:
    double relative_residual_;
};

}  // namespace fountain
