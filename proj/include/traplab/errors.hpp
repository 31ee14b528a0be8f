#pragma once

#include <stdexcept>
#include <string>

namespace traplab {

// Series or iteration failed to converge within the configured budget.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// The requested quantity diverges for these parameters (e.g. 2F1 at z = 1
// with c - a - b <= 0).
class DivergenceError : public std::runtime_error {
public:
    explicit DivergenceError(const std::string& what) : std::runtime_error(what) {}
};

// The closed form is not defined in this parameter regime (e.g. expected
// trapping time when alpha <= lambda / r).
class RegimeError : public std::runtime_error {
public:
    explicit RegimeError(const std::string& what) : std::runtime_error(what) {}
};

// A sample is too degenerate to estimate from (zero or out-of-range moments).
class DegenerateSampleError : public std::runtime_error {
public:
    explicit DegenerateSampleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace traplab
