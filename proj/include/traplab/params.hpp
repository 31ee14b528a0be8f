#pragma once

#include <stdexcept>

namespace traplab {

// Parameterization of the capital process: exponential growth at rate r
// above the critical capital x_star, Poisson(lambda) loss epochs, and
// Beta(alpha, 1)-distributed remaining proportions of capital.
struct ModelParams {
    double r = 1.0;
    double lambda = 1.0;
    double alpha = 1.0;
    double x_star = 1.0;

    // alpha > lambda / r: trapping is not almost sure and the closed-form
    // trapping probability is strictly below one.
    bool net_condition() const { return alpha * r > lambda; }

    void validate() const {
        if (!(r > 0.0)) throw std::domain_error("ModelParams: r must be > 0");
        if (!(lambda > 0.0)) throw std::domain_error("ModelParams: lambda must be > 0");
        if (!(alpha > 0.0)) throw std::domain_error("ModelParams: alpha must be > 0");
        if (!(x_star > 0.0)) throw std::domain_error("ModelParams: x_star must be > 0");
    }
};

// Valuation side of the Gerber-Shiu function: force of interest delta >= 0.
struct ValuationParams {
    double delta = 0.0;

    void validate() const {
        if (!(delta >= 0.0)) throw std::domain_error("ValuationParams: delta must be >= 0");
    }
};

}  // namespace traplab
