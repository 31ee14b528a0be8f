#pragma once

#include <functional>

namespace traplab::quadrature {

// Adaptive Gauss-Kronrod 15(7) integration of f over [lo, hi] to the given
// absolute tolerance. Intended for smooth integrands; throws
// ConvergenceError if the interval budget is exhausted first.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double abs_tol = 1e-10, int max_depth = 40);

}  // namespace traplab::quadrature
