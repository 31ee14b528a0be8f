#include "traplab/estimate.hpp"

#include <cmath>
#include <stdexcept>

#include "traplab/errors.hpp"

namespace traplab::estimate {

namespace {

constexpr double kDegenerateAlphaBound = 1e10;

// n log x* - sum log(x* - y_i); positive on any non-degenerate sample.
double mle_denominator(const ShortfallSample& s) {
    double acc = 0.0;
    for (double y : s.y) {
        if (!(y < s.x_star))
            throw std::domain_error("mle_alpha: short-falls must be strictly below x_star");
        acc += std::log(s.x_star) - std::log(s.x_star - y);
    }
    return acc;
}

double loglik_derivative(double alpha, const ShortfallSample& s) {
    const double n = static_cast<double>(s.y.size());
    return n / alpha - mle_denominator(s);
}

}  // namespace

void ShortfallSample::validate() const {
    if (y.empty()) throw std::domain_error("ShortfallSample: empty sample");
    if (!(x_star > 0.0)) throw std::domain_error("ShortfallSample: x_star must be > 0");
    for (double v : y) {
        if (!(v > 0.0 && v < x_star))
            throw std::domain_error("ShortfallSample: short-falls must lie strictly in (0, x_star)");
    }
}

double mle_alpha(const ShortfallSample& s) {
    if (s.y.empty()) throw std::domain_error("mle_alpha: empty sample");
    const double denom = mle_denominator(s);
    if (!(denom > 0.0))
        throw DegenerateSampleError("mle_alpha: nonpositive log-likelihood denominator");
    const double alpha = static_cast<double>(s.y.size()) / denom;
    // Stationarity sign check: the log-likelihood must increase just below
    // and decrease just above the closed-form maximizer.
    const double eps = 1e-6 * alpha;
    if (!(loglik_derivative(alpha - eps, s) > 0.0) || !(loglik_derivative(alpha + eps, s) < 0.0))
        throw DegenerateSampleError("mle_alpha: closed form failed the stationarity check");
    return alpha;
}

double mme_alpha(const ShortfallSample& s) {
    if (s.y.empty()) throw std::domain_error("mme_alpha: empty sample");
    double m1 = 0.0;
    for (double y : s.y) m1 += y;
    m1 /= static_cast<double>(s.y.size());
    if (!(m1 > 0.0 && m1 < s.x_star))
        throw DegenerateSampleError("mme_alpha: first sample moment outside (0, x_star)");
    return (s.x_star - m1) / m1;
}

double loglik(double alpha, const ShortfallSample& s) {
    if (!(alpha > 0.0)) throw std::domain_error("loglik: alpha must be > 0");
    if (s.y.empty()) throw std::domain_error("loglik: empty sample");
    double sum_log = 0.0;
    for (double y : s.y) {
        if (!(y < s.x_star))
            throw std::domain_error("loglik: short-falls must be strictly below x_star");
        sum_log += std::log(s.x_star - y);
    }
    const double n = static_cast<double>(s.y.size());
    return n * (std::log(alpha) - alpha * std::log(s.x_star)) + (alpha - 1.0) * sum_log;
}

FitReport fit(const ShortfallSample& s) {
    s.validate();
    FitReport report;
    report.n = static_cast<long>(s.y.size());
    report.alpha_mle = mle_alpha(s);
    report.alpha_mme = mme_alpha(s);
    report.loglik_at_mle = loglik(report.alpha_mle, s);
    report.mle_degenerate = report.alpha_mle > kDegenerateAlphaBound;
    return report;
}

}  // namespace traplab::estimate
