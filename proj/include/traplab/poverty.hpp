#pragma once

#include <span>

namespace traplab::poverty {

// FGT_gamma request: poverty-aversion exponent and poverty line.
struct FgtRequest {
    double gamma = 0.0;
    double x_star = 1.0;
};

// Weighted empirical FGT index: mean of ((x* - x)/x*)^gamma over households
// strictly below the poverty line (the gamma = 0 term counts as 1).
double fgt_empirical(std::span<const double> incomes, std::span<const double> weights,
                     const FgtRequest& req);
double fgt_empirical(std::span<const double> incomes, const FgtRequest& req);

// Weighted fraction of households strictly below x_star.
double headcount(std::span<const double> incomes, std::span<const double> weights,
                 double x_star);
double headcount(std::span<const double> incomes, double x_star);

// h-th moment of W ~ B1(b, p, q): b^h B(p+q, h) / B(p, h).
double b1_moment(double h, double b, double p, double q);

// Parametric FGT index from the fitted B1 short-fall model:
// FGT_gamma = H * E[Y^gamma] / x*^gamma with Y ~ B1(x*, 1, alpha);
// gamma = 0 returns the head-count itself.
double fgt_from_b1(double alpha, double headcount, double gamma, double x_star);

}  // namespace traplab::poverty
