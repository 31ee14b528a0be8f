#pragma once

#include <functional>

#include "traplab/params.hpp"
#include "traplab/specfun.hpp"

namespace traplab::gerbershiu {

// Parameters of the hypergeometric representation of the Gerber-Shiu
// function: the two roots a_h <= 0 <= b_h of the indicial equation and
// c_h = alpha.
struct HyperParams {
    double a_h = 0.0;
    double b_h = 0.0;
    double c_h = 0.0;
};

HyperParams derive_hyper_params(const ModelParams& p, double delta);

// Laplace transform of the trapping time,
//   m_delta(x) = lambda * 2F1(b, b-c+1; b-a+1; 1/y) * y^{-b}
//              / [(lambda+delta) * 2F1(b, b-c+1; b-a+1; 1)],   y = x/x*.
// delta = 0 delegates to trapping_probability.
double laplace_trapping_time(double x, const ModelParams& p, const ValuationParams& v,
                             const specfun::SeriesControl& ctl = {});

// d/dx of the Laplace transform (same closed form differentiated in x).
double laplace_trapping_time_dx(double x, const ModelParams& p, const ValuationParams& v,
                                const specfun::SeriesControl& ctl = {});

// Infinite-time trapping probability. Returns 1 when alpha <= lambda/r
// (trapping is almost sure; check ModelParams::net_condition to tell the
// regimes apart).
double trapping_probability(double x, const ModelParams& p,
                            const specfun::SeriesControl& ctl = {});

// E[tau; tau < infinity], the delta-derivative of the Laplace transform at
// zero, expressed through the 2F1 parameter derivatives. Requires the net
// condition alpha > lambda/r.
double expected_trapping_time(double x, const ModelParams& p,
                              const specfun::SeriesControl& ctl = {});

// E[tau | tau < infinity] = E[tau; tau < infinity] / psi(x).
double conditional_expected_trapping_time(double x, const ModelParams& p,
                                          const specfun::SeriesControl& ctl = {});

// Distribution function of the discounted capital deficit at trapping:
// F_delta(y; tau < inf | x) = m_delta(x) * [1 - (1 - y/x*)^alpha].
double deficit_cdf_discounted(double y, double x, const ModelParams& p,
                              const ValuationParams& v,
                              const specfun::SeriesControl& ctl = {});

// Conditional law of the deficit given trapping; free of x and delta.
double deficit_cdf_conditional(double y, const ModelParams& p);
double deficit_pdf_conditional(double y, const ModelParams& p);

// h-th moment of the (discounted) capital deficit at trapping.
// conditional = alpha * x*^h * B(alpha, h+1); raw = conditional * m_delta(x).
struct DeficitMoment {
    double raw = 0.0;
    double conditional = 0.0;
};
DeficitMoment deficit_moment(double h, double x, const ModelParams& p,
                             const ValuationParams& v,
                             const specfun::SeriesControl& ctl = {});

// Penalty functions w(surplus, deficit) for which the free term
// A(x) = int_0^{x*/x} w(x - x*, x* - x z) dG_Z(z) is available in closed
// form under Beta(alpha, 1) losses.
struct PenaltySpec {
    enum class Kind { unit, deficit_indicator, deficit_power };

    Kind kind = Kind::unit;
    double threshold = 0.0;  // y_d for the indicator penalty
    double power = 1.0;      // h for the power penalty

    static PenaltySpec unit() { return {}; }
    static PenaltySpec deficit_indicator(double y_d) {
        return {Kind::deficit_indicator, y_d, 1.0};
    }
    static PenaltySpec deficit_power(double h) { return {Kind::deficit_power, 0.0, h}; }
};

// Closed-form free term lambda-multiplier A(x) for the given penalty.
double penalty_free_term(const PenaltySpec& w, double x, const ModelParams& p);

// Signed residual of the integro-differential equation
//   r (x - x*) m'(x) - (delta + lambda) m(x)
//     + lambda int_{x*/x}^1 m(x z) dG_Z(z) + lambda A(x)
// at x; zero (up to quadrature tolerance) for every closed form above.
double ide_residual(const std::function<double(double)>& m,
                    const std::function<double(double)>& m_prime,
                    double x, const ModelParams& p, const ValuationParams& v,
                    const PenaltySpec& penalty, double quad_abs_tol = 1e-10);

// Capital level beyond which the trapping probability drops below eps;
// bisection on the closed-form psi. Requires the net condition.
double upper_barrier(const ModelParams& p, double eps,
                     const specfun::SeriesControl& ctl = {});

}  // namespace traplab::gerbershiu
