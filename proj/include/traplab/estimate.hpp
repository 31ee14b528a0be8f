#pragma once

#include <string>
#include <vector>

namespace traplab::estimate {

// A vector of observed income short-falls y_i, each strictly inside
// (0, x_star). Boundary observations are clipped upstream (dataio) and the
// clip count travels with the sample.
struct ShortfallSample {
    std::vector<double> y;
    double x_star = 1.0;
    std::string group;   // optional group key (region / area)
    long n_clipped = 0;  // observations clipped off the y = x_star boundary

    void validate() const;
};

struct FitReport {
    double alpha_mle = 0.0;
    double alpha_mme = 0.0;
    long n = 0;
    double loglik_at_mle = 0.0;
    // Set when the MLE denominator is so small that alpha_mle is effectively
    // unbounded (short-falls all collapsing to zero).
    bool mle_degenerate = false;
};

// Closed-form MLE: n / (n log x* - sum log(x* - y_i)).
double mle_alpha(const ShortfallSample& s);

// Method of moments: (x* - M1) / M1 with M1 the first sample moment.
double mme_alpha(const ShortfallSample& s);

// Log-likelihood n [log(alpha) - alpha log(x*)] + (alpha-1) sum log(x* - y_i).
double loglik(double alpha, const ShortfallSample& s);

FitReport fit(const ShortfallSample& s);

}  // namespace traplab::estimate
