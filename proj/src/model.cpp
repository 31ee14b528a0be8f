#include "traplab/model.hpp"

#include <algorithm>
#include <thread>

#include "traplab/gerbershiu.hpp"

namespace traplab::model {

double flow(double x0, double dt, const ModelParams& p) {
    p.validate();
    if (!(dt >= 0.0)) throw std::domain_error("flow: dt must be >= 0");
    if (!(x0 >= 0.0)) throw std::domain_error("flow: x0 must be >= 0");
    if (x0 <= p.x_star) return x0;
    return (x0 - p.x_star) * std::exp(p.r * dt) + p.x_star;
}

namespace {

double solve_barrier(const ModelParams& p, const SimConfig& cfg) {
    return p.net_condition() ? gerbershiu::upper_barrier(p, cfg.upper_barrier_prob) : 0.0;
}

}  // namespace

TrappingEvent simulate_one(double x0, const ModelParams& p, const SimConfig& cfg,
                           rng::Stream& rng) {
    return simulate_one(x0, p, cfg, rng, solve_barrier(p, cfg));
}

McSummary monte_carlo(double x0, const ModelParams& p, const SimConfig& cfg, int n_threads) {
    p.validate();
    cfg.validate();
    const double x_high = solve_barrier(p, cfg);
    const long n = cfg.n_paths;

    std::vector<TrappingEvent> events(static_cast<size_t>(n));
    const auto worker = [&](long begin, long end) {
        for (long i = begin; i < end; ++i) {
            rng::Stream stream(cfg.seed, static_cast<std::uint64_t>(i));
            events[static_cast<size_t>(i)] = simulate_one(x0, p, cfg, stream, x_high);
        }
    };

    int workers = n_threads > 0 ? n_threads
                                : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = static_cast<int>(std::min<long>(workers, n));
    if (workers <= 1) {
        worker(0, n);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        const long chunk = (n + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const long begin = w * chunk;
            const long end = std::min(n, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(worker, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    McSummary s;
    s.n_paths = n;
    s.x_high = x_high;
    for (const auto& ev : events) {
        if (ev.trapped) {
            s.tau_samples.push_back(*ev.tau);
            s.deficit_samples.push_back(*ev.deficit);
            s.surplus_samples.push_back(*ev.surplus_before);
        } else {
            ++s.n_censored;
        }
    }
    s.n_trapped = static_cast<long>(s.tau_samples.size());
    const double dn = static_cast<double>(n);
    s.psi_hat = static_cast<double>(s.n_trapped) / dn;
    s.se_psi = std::sqrt(s.psi_hat * (1.0 - s.psi_hat) / dn);
    if (s.n_trapped > 0) {
        double sum = 0.0;
        for (double tau : s.tau_samples) sum += tau;
        s.mean_tau_given_trapped = sum / static_cast<double>(s.n_trapped);
        if (s.n_trapped > 1) {
            double ss = 0.0;
            for (double tau : s.tau_samples) {
                const double d = tau - s.mean_tau_given_trapped;
                ss += d * d;
            }
            s.se_tau = std::sqrt(ss / (static_cast<double>(s.n_trapped - 1) *
                                       static_cast<double>(s.n_trapped)));
        }
    }
    return s;
}

}  // namespace traplab::model
