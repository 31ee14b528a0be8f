#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "traplab/errors.hpp"
#include "traplab/estimate.hpp"
#include "traplab/gerbershiu.hpp"
#include "traplab/rng.hpp"

using namespace traplab;
using estimate::ShortfallSample;

namespace {

double rel_err(double got, double want) {
    return std::fabs(got - want) / std::max(1e-300, std::fabs(want));
}

ShortfallSample b1_sample(long n, double x_star, double alpha, std::uint64_t seed) {
    ShortfallSample s;
    s.x_star = x_star;
    s.y.reserve(n);
    rng::Stream rng(seed, 0);
    for (long i = 0; i < n; ++i)
        s.y.push_back(x_star * (1.0 - std::pow(rng.uniform01(), 1.0 / alpha)));
    return s;
}

}  // namespace

TEST_CASE("mle closed form on a hand-computed sample") {
    // y_i = x*(1 - e^{-1}) makes sum log(x* - y_i) = -n, so alpha_hat = 1
    ShortfallSample s;
    s.x_star = 1.0;
    s.y.assign(25, 1.0 - std::exp(-1.0));
    CHECK(rel_err(estimate::mle_alpha(s), 1.0) < 1e-12);
}

TEST_CASE("mme closed form") {
    ShortfallSample s;
    s.x_star = 1.0;
    s.y = {0.5, 0.5};  // M1 = x*/2
    CHECK(estimate::mme_alpha(s) == 1.0);
    s.y = {0.25, 0.25, 0.25};  // M1 = x*/4
    CHECK(estimate::mme_alpha(s) == 3.0);
}

TEST_CASE("consistency on simulated B1 samples") {
    const auto s = b1_sample(100000, 1.0, 3.0, 5150);
    const double mle = estimate::mle_alpha(s);
    const double mme = estimate::mme_alpha(s);
    CHECK(mle > 2.95);
    CHECK(mle < 3.05);
    CHECK(mme > 2.95);
    CHECK(mme < 3.05);
}

TEST_CASE("rmse decreases with the sample size") {
    const double alpha = 3.37;
    for (auto est : {&estimate::mle_alpha, &estimate::mme_alpha}) {
        double prev_rmse = 1e9;
        for (long n : {100L, 1000L, 10000L}) {
            double sse = 0.0;
            const int reps = 60;
            for (int r = 0; r < reps; ++r) {
                const auto s = b1_sample(n, 1.0, alpha, 9000 + 131 * r + n);
                const double err = (*est)(s)-alpha;
                sse += err * err;
            }
            const double rmse = std::sqrt(sse / reps);
            CHECK(rmse < prev_rmse);
            prev_rmse = rmse;
        }
    }
}

TEST_CASE("loglik: uniform case, maximizer, independent density route") {
    ShortfallSample s = b1_sample(500, 1.0, 2.2, 77);
    // alpha = 1, x* = 1: the density is uniform so the log-likelihood is 0
    ShortfallSample unit = s;
    unit.x_star = 1.0;
    CHECK(std::fabs(estimate::loglik(1.0, unit)) < 1e-12);

    const double alpha_hat = estimate::mle_alpha(s);
    const double best = estimate::loglik(alpha_hat, s);
    for (double alpha : {0.3, 0.9, 1.7, 2.2, 3.0, 4.5, 8.0})
        CHECK(estimate::loglik(alpha, s) <= best + 1e-9);

    // matches the sum of log conditional-deficit densities
    const double alpha = 2.7;
    const ModelParams p{1.08, 1.0, alpha, s.x_star};
    double direct = 0.0;
    for (double y : s.y) direct += std::log(gerbershiu::deficit_pdf_conditional(y, p));
    CHECK(std::fabs(estimate::loglik(alpha, s) - direct) < 1e-10 * std::fabs(direct) + 1e-10);
}

TEST_CASE("mle stationarity: derivative vanishes at the estimate") {
    const auto s = b1_sample(2000, 421.0, 3.1, 31);
    const double alpha_hat = estimate::mle_alpha(s);
    const double h = 1e-6 * alpha_hat;
    const double deriv = (estimate::loglik(alpha_hat + h, s) - estimate::loglik(alpha_hat - h, s)) /
                         (2.0 * h);
    CHECK(std::fabs(deriv) <= 1e-8 * static_cast<double>(s.y.size()));
}

TEST_CASE("scale equivariance of both estimators") {
    const auto s = b1_sample(3000, 1.0, 2.8, 12);
    for (double scale : {0.001, 7.5, 421.0}) {
        ShortfallSample scaled;
        scaled.x_star = s.x_star * scale;
        for (double y : s.y) scaled.y.push_back(y * scale);
        CHECK(rel_err(estimate::mle_alpha(scaled), estimate::mle_alpha(s)) < 1e-12);
        CHECK(rel_err(estimate::mme_alpha(scaled), estimate::mme_alpha(s)) < 1e-12);
    }
}

TEST_CASE("degenerate and domain errors") {
    ShortfallSample s;
    s.x_star = 1.0;
    s.y = {1.0};  // y = x* breaks the log term
    CHECK_THROWS_AS(estimate::mle_alpha(s), std::domain_error);
    CHECK_THROWS_AS(estimate::loglik(2.0, s), std::domain_error);
    s.y = {1.2};
    CHECK_THROWS_AS(estimate::mme_alpha(s), DegenerateSampleError);
    s.y.clear();
    CHECK_THROWS_AS(estimate::mle_alpha(s), std::domain_error);
    CHECK_THROWS_AS(estimate::fit(s), std::domain_error);
    // y -> 0+ drives the estimate toward infinity; flagged, not fatal
    ShortfallSample tiny;
    tiny.x_star = 1.0;
    tiny.y = {1e-13};
    const auto report = estimate::fit(tiny);
    CHECK(report.mle_degenerate);
    CHECK(report.alpha_mle > 1e10);
}

TEST_CASE("fit report carries both estimates and the likelihood at the MLE") {
    const auto s = b1_sample(5000, 421.0, 3.37, 2014);
    const auto report = estimate::fit(s);
    CHECK(report.n == 5000);
    CHECK(report.alpha_mle == estimate::mle_alpha(s));
    CHECK(report.alpha_mme == estimate::mme_alpha(s));
    CHECK(report.loglik_at_mle == estimate::loglik(report.alpha_mle, s));
    CHECK_FALSE(report.mle_degenerate);
    CHECK(std::fabs(report.alpha_mle - 3.37) < 0.25);
    CHECK(std::fabs(report.alpha_mme - 3.37) < 0.25);
}
