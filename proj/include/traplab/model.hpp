#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "traplab/params.hpp"
#include "traplab/rng.hpp"

namespace traplab::model {

// Why a path ended without trapping.
enum class CensorReason { none, horizon, barrier, jump_guard };

// Outcome of one simulated path. tau / surplus_before / deficit are only
// present when the path trapped.
struct TrappingEvent {
    bool trapped = false;
    std::optional<double> tau;
    std::optional<double> surplus_before;  // X_{tau-} - x*
    std::optional<double> deficit;         // x* - X_tau, in (0, x*]
    double end_capital = 0.0;
    CensorReason censor = CensorReason::none;
};

struct SimConfig {
    std::optional<double> horizon;     // absent: run until trapping or censoring
    double upper_barrier_prob = 1e-6;  // censor once psi(capital) <= this
    std::uint64_t seed = 0;
    long n_paths = 1;

    void validate() const {
        if (!(upper_barrier_prob > 0.0 && upper_barrier_prob < 1.0))
            throw std::domain_error("SimConfig: upper_barrier_prob must be in (0, 1)");
        if (horizon && !(*horizon > 0.0))
            throw std::domain_error("SimConfig: horizon must be > 0 when present");
        if (n_paths < 1) throw std::domain_error("SimConfig: n_paths must be >= 1");
    }
};

// Deterministic flow between jumps: (x0 - x*) e^{r dt} + x* above the
// critical capital, constant below it. Exact, no time stepping.
double flow(double x0, double dt, const ModelParams& p);

// Inverse-CDF draw of the remaining proportion Z ~ Beta(alpha, 1).
template <class Rng>
double sample_loss_proportion(double alpha, Rng& rng) {
    if (!(alpha > 0.0)) throw std::domain_error("sample_loss_proportion: alpha must be > 0");
    return std::pow(rng.uniform01(), 1.0 / alpha);
}

namespace detail {
// Paths in the almost-sure trapping regime have no barrier; this guard keeps
// a single path from looping unboundedly on adversarial parameters.
constexpr long kMaxJumpsPerPath = 50'000'000;
}  // namespace detail

// Exact jump-chain simulation: exponential(lambda) inter-arrivals, closed-form
// flow in between, multiplicative Beta(alpha, 1) losses. Draw order per jump
// is (inter-arrival, proportion). x_high <= 0 disables the censoring barrier.
template <class Rng>
TrappingEvent simulate_one(double x0, const ModelParams& p, const SimConfig& cfg, Rng& rng,
                           double x_high) {
    p.validate();
    cfg.validate();
    if (!(x0 >= p.x_star))
        throw std::domain_error("simulate_one: initial capital must be >= x_star");

    double t = 0.0;
    double x = x0;
    for (long jump = 0; jump < detail::kMaxJumpsPerPath; ++jump) {
        const double dt = -std::log1p(-rng.uniform01()) / p.lambda;
        if (cfg.horizon && t + dt > *cfg.horizon) {
            TrappingEvent ev;
            ev.end_capital = flow(x, *cfg.horizon - t, p);
            ev.censor = CensorReason::horizon;
            return ev;
        }
        t += dt;
        const double pre = flow(x, dt, p);
        const double z = sample_loss_proportion(p.alpha, rng);
        const double post = pre * z;
        if (post < p.x_star) {
            TrappingEvent ev;
            ev.trapped = true;
            ev.tau = t;
            ev.surplus_before = pre - p.x_star;
            ev.deficit = p.x_star - post;
            ev.end_capital = post;
            return ev;
        }
        x = post;
        if (x_high > 0.0 && x > x_high) {
            TrappingEvent ev;
            ev.end_capital = x;
            ev.censor = CensorReason::barrier;
            return ev;
        }
    }
    TrappingEvent ev;
    ev.end_capital = x;
    ev.censor = CensorReason::jump_guard;
    return ev;
}

// Convenience overload: solves the censoring barrier from
// cfg.upper_barrier_prob (no barrier when the net condition fails).
TrappingEvent simulate_one(double x0, const ModelParams& p, const SimConfig& cfg,
                           rng::Stream& rng);

struct McSummary {
    long n_paths = 0;
    long n_trapped = 0;
    long n_censored = 0;
    double psi_hat = 0.0;
    double se_psi = 0.0;
    double mean_tau_given_trapped = 0.0;
    double se_tau = 0.0;
    double x_high = 0.0;  // 0 when the barrier is disabled
    // One entry per trapped path, in path-index order.
    std::vector<double> tau_samples;
    std::vector<double> deficit_samples;
    std::vector<double> surplus_samples;
};

// n_paths independent replications with per-path substreams derived from
// cfg.seed. Aggregation is keyed by path index, so results are identical for
// any worker count. n_threads <= 0 picks the hardware default.
McSummary monte_carlo(double x0, const ModelParams& p, const SimConfig& cfg, int n_threads = 0);

}  // namespace traplab::model
