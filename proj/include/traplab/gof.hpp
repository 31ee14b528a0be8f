#pragma once

#include <cstdint>
#include <optional>

#include "traplab/estimate.hpp"

namespace traplab::gof {

using estimate::ShortfallSample;

enum class Estimator { mle, mme };

struct GofReport {
    double d_stat = 0.0;
    double p_value = 0.0;
    double r_squared = 0.0;
    long n_boot = 0;
};

// Tie-aware one-sample Kolmogorov-Smirnov statistic against the fitted B1
// CDF F(y) = 1 - (1 - y/x*)^alpha: the sup over distinct sorted values of
// both one-sided gaps, with the empirical CDF right-continuous in ties.
double ks_statistic(const ShortfallSample& s, double alpha);

// Parametric-bootstrap p-value: refit alpha per replicate, recompute D*, and
// return (1 + #{D* >= D_obs}) / (n_boot + 1). Deterministic given the seed;
// replicates run on per-index substreams. d_obs_override is a test hook.
double ks_pvalue_sim(const ShortfallSample& s, long n_boot, std::uint64_t seed,
                     Estimator est = Estimator::mle, int n_threads = 0,
                     std::optional<double> d_obs_override = {});

// R^2 between empirical and fitted CDF values at the observations.
double r_squared(const ShortfallSample& s, double alpha);

GofReport evaluate(const ShortfallSample& s, double alpha, long n_boot, std::uint64_t seed,
                   Estimator est = Estimator::mle, int n_threads = 0);

}  // namespace traplab::gof
