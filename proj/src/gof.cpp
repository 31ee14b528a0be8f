#include "traplab/gof.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "traplab/errors.hpp"
#include "traplab/rng.hpp"

namespace traplab::gof {

namespace {

double b1_cdf(double y, double x_star, double alpha) {
    return 1.0 - std::pow(1.0 - y / x_star, alpha);
}

double refit_alpha(const ShortfallSample& s, Estimator est) {
    return est == Estimator::mle ? estimate::mle_alpha(s) : estimate::mme_alpha(s);
}

// Draw n short-falls from B1(x_star, 1, alpha): y = x*(1 - U^{1/alpha}),
// clipped off the upper boundary like the ingestion layer does.
std::vector<double> draw_b1(long n, double x_star, double alpha, rng::Stream& rng) {
    std::vector<double> y(static_cast<size_t>(n));
    const double y_max = x_star * (1.0 - 1e-12);
    for (auto& v : y) {
        v = std::min(x_star * (1.0 - std::pow(rng.uniform01(), 1.0 / alpha)), y_max);
        if (v <= 0.0) v = x_star * 1e-300;
    }
    return y;
}

// Right-continuous empirical CDF value at each observation (ties share the
// value of their last occurrence).
std::vector<double> empirical_cdf_at(const std::vector<double>& sorted) {
    const size_t n = sorted.size();
    std::vector<double> fn(n);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && sorted[j + 1] == sorted[i]) ++j;
        const double value = static_cast<double>(j + 1) / static_cast<double>(n);
        for (size_t k = i; k <= j; ++k) fn[k] = value;
        i = j + 1;
    }
    return fn;
}

}  // namespace

double ks_statistic(const ShortfallSample& s, double alpha) {
    if (s.y.empty()) throw std::domain_error("ks_statistic: empty sample");
    if (!(alpha > 0.0)) throw std::domain_error("ks_statistic: alpha must be > 0");
    std::vector<double> sorted(s.y);
    std::sort(sorted.begin(), sorted.end());

    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    double fn_prev = 0.0;
    size_t i = 0;
    while (i < sorted.size()) {
        size_t j = i;
        while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
        const double fn = static_cast<double>(j + 1) / n;
        const double f = b1_cdf(sorted[i], s.x_star, alpha);
        d = std::max(d, std::max(std::fabs(fn - f), std::fabs(fn_prev - f)));
        fn_prev = fn;
        i = j + 1;
    }
    return d;
}

double ks_pvalue_sim(const ShortfallSample& s, long n_boot, std::uint64_t seed,
                     Estimator est, int n_threads, std::optional<double> d_obs_override) {
    if (n_boot < 100) throw std::domain_error("ks_pvalue_sim: n_boot must be >= 100");
    const double alpha_hat = refit_alpha(s, est);
    const double d_obs = d_obs_override ? *d_obs_override : ks_statistic(s, alpha_hat);
    const long n = static_cast<long>(s.y.size());

    std::vector<double> d_star(static_cast<size_t>(n_boot));
    const auto worker = [&](long begin, long end) {
        for (long b = begin; b < end; ++b) {
            rng::Stream rng(seed, static_cast<std::uint64_t>(b) + 1);
            ShortfallSample rep;
            rep.x_star = s.x_star;
            rep.y = draw_b1(n, s.x_star, alpha_hat, rng);
            d_star[static_cast<size_t>(b)] = ks_statistic(rep, refit_alpha(rep, est));
        }
    };

    int workers = n_threads > 0 ? n_threads
                                : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = static_cast<int>(std::min<long>(workers, n_boot));
    if (workers <= 1) {
        worker(0, n_boot);
    } else {
        std::vector<std::thread> pool;
        const long chunk = (n_boot + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const long begin = w * chunk;
            const long end = std::min(n_boot, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(worker, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    long count = 0;
    for (double d : d_star)
        if (d >= d_obs) ++count;
    return static_cast<double>(1 + count) / static_cast<double>(n_boot + 1);
}

double r_squared(const ShortfallSample& s, double alpha) {
    if (s.y.empty()) throw std::domain_error("r_squared: empty sample");
    if (!(alpha > 0.0)) throw std::domain_error("r_squared: alpha must be > 0");
    std::vector<double> sorted(s.y);
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() == sorted.back())
        throw DegenerateSampleError("r_squared: all observations equal (zero total variation)");
    const std::vector<double> fn = empirical_cdf_at(sorted);

    const size_t n = sorted.size();
    std::vector<double> fitted(n);
    double mean = 0.0;
    for (size_t i = 0; i < n; ++i) {
        fitted[i] = b1_cdf(sorted[i], s.x_star, alpha);
        mean += fitted[i];
    }
    mean /= static_cast<double>(n);

    double explained = 0.0;
    double residual = 0.0;
    for (size_t i = 0; i < n; ++i) {
        explained += (fitted[i] - mean) * (fitted[i] - mean);
        residual += (fn[i] - fitted[i]) * (fn[i] - fitted[i]);
    }
    if (explained == 0.0)
        throw DegenerateSampleError("r_squared: zero variation in fitted CDF values");
    return explained / (explained + residual);
}

GofReport evaluate(const ShortfallSample& s, double alpha, long n_boot, std::uint64_t seed,
                   Estimator est, int n_threads) {
    GofReport report;
    report.d_stat = ks_statistic(s, alpha);
    report.p_value = ks_pvalue_sim(s, n_boot, seed, est, n_threads);
    report.r_squared = r_squared(s, alpha);
    report.n_boot = n_boot;
    return report;
}

}  // namespace traplab::gof
