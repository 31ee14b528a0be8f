#include "traplab/poverty.hpp"

#include <cmath>
#include <stdexcept>

#include "traplab/specfun.hpp"

namespace traplab::poverty {

namespace {

void check_request(const FgtRequest& req) {
    if (!(req.gamma >= 0.0)) throw std::domain_error("fgt: gamma must be >= 0");
    if (!(req.x_star > 0.0)) throw std::domain_error("fgt: x_star must be > 0");
}

}  // namespace

double fgt_empirical(std::span<const double> incomes, std::span<const double> weights,
                     const FgtRequest& req) {
    check_request(req);
    if (incomes.empty()) throw std::domain_error("fgt_empirical: empty input");
    if (!weights.empty() && weights.size() != incomes.size())
        throw std::domain_error("fgt_empirical: weights length mismatch");

    double num = 0.0;
    double den = 0.0;
    for (size_t i = 0; i < incomes.size(); ++i) {
        const double x = incomes[i];
        if (!(x >= 0.0)) throw std::domain_error("fgt_empirical: incomes must be >= 0");
        const double w = weights.empty() ? 1.0 : weights[i];
        if (!(w > 0.0)) throw std::domain_error("fgt_empirical: weights must be > 0");
        den += w;
        if (x < req.x_star)  // boundary x == x_star counts as non-poor
            num += w * (req.gamma == 0.0
                            ? 1.0
                            : std::pow((req.x_star - x) / req.x_star, req.gamma));
    }
    return num / den;
}

double fgt_empirical(std::span<const double> incomes, const FgtRequest& req) {
    return fgt_empirical(incomes, {}, req);
}

double headcount(std::span<const double> incomes, std::span<const double> weights,
                 double x_star) {
    return fgt_empirical(incomes, weights, {0.0, x_star});
}

double headcount(std::span<const double> incomes, double x_star) {
    return headcount(incomes, {}, x_star);
}

double b1_moment(double h, double b, double p, double q) {
    if (!(h > 0.0) || !(b > 0.0) || !(p > 0.0) || !(q > 0.0))
        throw std::domain_error("b1_moment: all arguments must be > 0");
    using specfun::ln_gamma;
    // B(p+q, h) / B(p, h) = Gamma(p+q) Gamma(p+h) / (Gamma(p+q+h) Gamma(p))
    return std::pow(b, h) *
           std::exp(ln_gamma(p + q) + ln_gamma(p + h) - ln_gamma(p + q + h) - ln_gamma(p));
}

double fgt_from_b1(double alpha, double headcount, double gamma, double x_star) {
    if (!(alpha > 0.0)) throw std::domain_error("fgt_from_b1: alpha must be > 0");
    if (!(headcount >= 0.0 && headcount <= 1.0))
        throw std::domain_error("fgt_from_b1: headcount must lie in [0, 1]");
    if (!(gamma >= 0.0)) throw std::domain_error("fgt_from_b1: gamma must be >= 0");
    if (!(x_star > 0.0)) throw std::domain_error("fgt_from_b1: x_star must be > 0");
    if (gamma == 0.0) return headcount;
    return headcount * b1_moment(gamma, x_star, 1.0, alpha) / std::pow(x_star, gamma);
}

}  // namespace traplab::poverty
