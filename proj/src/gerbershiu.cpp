#include "traplab/gerbershiu.hpp"

#include <cmath>
#include <limits>

#include "traplab/errors.hpp"
#include "traplab/quadrature.hpp"

namespace traplab::gerbershiu {

using specfun::Hyper2F1Args;
using specfun::SeriesControl;

namespace {

void check_initial_capital(double x, const ModelParams& p) {
    if (!(x >= p.x_star))
        throw std::domain_error("gerbershiu: initial capital x must be >= x_star");
}

void check_deficit_arg(double y, const ModelParams& p) {
    if (!(y >= 0.0 && y <= p.x_star))
        throw std::domain_error("gerbershiu: deficit argument must lie in [0, x_star]");
}

}  // namespace

HyperParams derive_hyper_params(const ModelParams& p, double delta) {
    const double m = delta + p.lambda - p.alpha * p.r;
    const double disc = std::sqrt(m * m + 4.0 * p.r * p.alpha * delta);
    return {(-m - disc) / (2.0 * p.r), (-m + disc) / (2.0 * p.r), p.alpha};
}

double laplace_trapping_time(double x, const ModelParams& p, const ValuationParams& v,
                             const SeriesControl& ctl) {
    p.validate();
    v.validate();
    check_initial_capital(x, p);
    // delta = 0 makes a_h -> 0 and the ratio form 0/0-prone; the limit is the
    // trapping probability.
    if (v.delta == 0.0) return trapping_probability(x, p, ctl);

    const HyperParams h = derive_hyper_params(p, v.delta);
    const double y = x / p.x_star;
    const Hyper2F1Args at_z{h.b_h, h.b_h - h.c_h + 1.0, h.b_h - h.a_h + 1.0, 1.0 / y};
    const Hyper2F1Args at_one{at_z.a, at_z.b, at_z.c, 1.0};
    const double num = specfun::gauss_2f1(at_z, ctl);
    const double den = specfun::gauss_2f1(at_one, ctl);  // c-a-b = (delta+lambda)/r > 0
    return p.lambda / (p.lambda + v.delta) * num * std::pow(y, -h.b_h) / den;
}

double laplace_trapping_time_dx(double x, const ModelParams& p, const ValuationParams& v,
                                const SeriesControl& ctl) {
    p.validate();
    v.validate();
    check_initial_capital(x, p);
    const HyperParams h = derive_hyper_params(p, v.delta);
    if (h.b_h == 0.0) return 0.0;  // delta = 0 below the net condition: m is identically 1

    const double y = x / p.x_star;
    const double z = 1.0 / y;
    const Hyper2F1Args at_z{h.b_h, h.b_h - h.c_h + 1.0, h.b_h - h.a_h + 1.0, z};
    const double f = specfun::gauss_2f1(at_z, ctl);
    // dF/dz = (a b / c) 2F1(a+1, b+1; c+1; z)
    const double fp = at_z.a * at_z.b / at_z.c *
                      specfun::gauss_2f1({at_z.a + 1.0, at_z.b + 1.0, at_z.c + 1.0, z}, ctl);
    const double den = specfun::gauss_2f1({at_z.a, at_z.b, at_z.c, 1.0}, ctl);
    const double k = p.lambda / (p.lambda + v.delta) / den;
    return k / p.x_star * (-h.b_h * std::pow(y, -h.b_h - 1.0) * f - std::pow(y, -h.b_h - 2.0) * fp);
}

double trapping_probability(double x, const ModelParams& p, const SeriesControl& ctl) {
    p.validate();
    check_initial_capital(x, p);
    if (!p.net_condition()) return 1.0;  // trapping is almost sure

    const double lr = p.lambda / p.r;
    const double b = p.alpha - lr;
    const double y = x / p.x_star;
    const double f = specfun::gauss_2f1({b, 1.0 - lr, 1.0 + b, 1.0 / y}, ctl);
    const double log_pref =
        specfun::ln_gamma(p.alpha) - specfun::ln_gamma(1.0 + b) - specfun::ln_gamma(lr);
    return std::exp(log_pref) * f * std::pow(y, lr - p.alpha);
}

double expected_trapping_time(double x, const ModelParams& p, const SeriesControl& ctl) {
    p.validate();
    check_initial_capital(x, p);
    if (!p.net_condition())
        throw RegimeError("expected_trapping_time: requires alpha > lambda / r");

    const double lr = p.lambda / p.r;
    const double b = p.alpha - lr;
    const double y = x / p.x_star;
    const Hyper2F1Args at_z{b, 1.0 - lr, 1.0 + b, 1.0 / y};
    const Hyper2F1Args at_one{b, 1.0 - lr, 1.0 + b, 1.0};

    const double n = specfun::gauss_2f1(at_z, ctl);
    const double da_z = specfun::d2f1_da(at_z, ctl);
    const double db_z = specfun::d2f1_db(at_z, ctl);
    const double dc_z = specfun::d2f1_dc(at_z, ctl);
    const double da_1 = specfun::d2f1_da(at_one, ctl);
    const double db_1 = specfun::d2f1_db(at_one, ctl);
    const double dc_1 = specfun::d2f1_dc(at_one, ctl);

    // g = Gamma(alpha) / (Gamma(lambda/r) Gamma(1 + alpha - lambda/r)), the
    // reciprocal of 2F1(b, 1-lambda/r; 1+b; 1).
    const double g = std::exp(specfun::ln_gamma(p.alpha) - specfun::ln_gamma(lr) -
                              specfun::ln_gamma(1.0 + b));
    const double drift = p.alpha * p.r - p.lambda;
    const double weight = p.alpha * p.r + p.lambda;
    const double t_one = weight * dc_1 + p.lambda * (da_1 + db_1);
    const double t_z = weight * dc_z + p.lambda * (da_z + db_z);
    const double bracket =
        g * g * n * t_one +
        g / p.lambda * (n * (p.r * drift + p.lambda * p.lambda * std::log(y)) - p.lambda * t_z);
    return std::pow(y, lr - p.alpha) / (p.r * drift) * bracket;
}

double conditional_expected_trapping_time(double x, const ModelParams& p,
                                          const SeriesControl& ctl) {
    return expected_trapping_time(x, p, ctl) / trapping_probability(x, p, ctl);
}

double deficit_cdf_discounted(double y, double x, const ModelParams& p,
                              const ValuationParams& v, const SeriesControl& ctl) {
    check_deficit_arg(y, p);
    return laplace_trapping_time(x, p, v, ctl) * (1.0 - std::pow(1.0 - y / p.x_star, p.alpha));
}

double deficit_cdf_conditional(double y, const ModelParams& p) {
    p.validate();
    check_deficit_arg(y, p);
    return 1.0 - std::pow(1.0 - y / p.x_star, p.alpha);
}

double deficit_pdf_conditional(double y, const ModelParams& p) {
    p.validate();
    check_deficit_arg(y, p);
    return p.alpha / p.x_star * std::pow(1.0 - y / p.x_star, p.alpha - 1.0);
}

DeficitMoment deficit_moment(double h, double x, const ModelParams& p,
                             const ValuationParams& v, const SeriesControl& ctl) {
    if (!(h > 0.0)) throw std::domain_error("deficit_moment: requires h > 0");
    p.validate();
    const double conditional =
        p.alpha * std::pow(p.x_star, h) * specfun::beta_fn(p.alpha, h + 1.0);
    return {conditional * laplace_trapping_time(x, p, v, ctl), conditional};
}

double penalty_free_term(const PenaltySpec& w, double x, const ModelParams& p) {
    p.validate();
    check_initial_capital(x, p);
    const double y_alpha = std::pow(p.x_star / x, p.alpha);
    switch (w.kind) {
        case PenaltySpec::Kind::unit:
            return y_alpha;
        case PenaltySpec::Kind::deficit_indicator:
            if (!(w.threshold >= 0.0 && w.threshold <= p.x_star))
                throw std::domain_error("penalty_free_term: indicator threshold outside [0, x_star]");
            return y_alpha - std::pow((p.x_star - w.threshold) / x, p.alpha);
        case PenaltySpec::Kind::deficit_power:
            if (!(w.power > 0.0))
                throw std::domain_error("penalty_free_term: power penalty requires h > 0");
            return p.alpha * std::pow(p.x_star, w.power) *
                   specfun::beta_fn(p.alpha, w.power + 1.0) * y_alpha;
    }
    return 0.0;
}

double ide_residual(const std::function<double(double)>& m,
                    const std::function<double(double)>& m_prime,
                    double x, const ModelParams& p, const ValuationParams& v,
                    const PenaltySpec& penalty, double quad_abs_tol) {
    p.validate();
    v.validate();
    check_initial_capital(x, p);
    const auto integrand = [&](double z) {
        return m(x * z) * p.alpha * std::pow(z, p.alpha - 1.0);
    };
    const double integral = quadrature::integrate(integrand, p.x_star / x, 1.0, quad_abs_tol);
    return p.r * (x - p.x_star) * m_prime(x) - (v.delta + p.lambda) * m(x) +
           p.lambda * integral + p.lambda * penalty_free_term(penalty, x, p);
}

double upper_barrier(const ModelParams& p, double eps, const SeriesControl& ctl) {
    p.validate();
    if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("upper_barrier: eps must be in (0, 1)");
    if (!p.net_condition())
        throw RegimeError("upper_barrier: psi is identically 1 when alpha <= lambda / r");

    double lo = p.x_star;
    double hi = 2.0 * p.x_star;
    while (trapping_probability(hi, p, ctl) > eps) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300)
            throw ConvergenceError("upper_barrier: barrier exceeds representable range");
    }
    for (int i = 0; i < 200 && (hi - lo) > 1e-12 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (trapping_probability(mid, p, ctl) > eps ? lo : hi) = mid;
    }
    return hi;
}

}  // namespace traplab::gerbershiu
