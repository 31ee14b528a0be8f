#include "traplab/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace traplab::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kIntegerTol = 1e-9;  // distance to the nearest integer that counts as a pole

bool is_nonpositive_integer(double x) {
    return x < 0.5 && std::fabs(x - std::round(x)) <= kIntegerTol;
}

void check_control(const SeriesControl& ctl) {
    if (!(ctl.rel_tol > 0.0)) throw std::domain_error("SeriesControl: rel_tol must be > 0");
    if (ctl.max_terms < 1) throw std::domain_error("SeriesControl: max_terms must be >= 1");
}

void check_2f1_args(const Hyper2F1Args& q) {
    if (is_nonpositive_integer(q.c))
        throw std::domain_error("gauss_2f1: c must not be zero or a negative integer");
    if (!(q.z >= 0.0 && q.z <= 1.0))
        throw std::domain_error("gauss_2f1: z must lie in [0, 1]");
}

// Defining power series with the term recurrence; converges for z in [0, 1).
double direct_series(double a, double b, double c, double z, const SeriesControl& ctl) {
    double term = 1.0;
    double sum = 1.0;
    for (long n = 0; n < ctl.max_terms; ++n) {
        const double dn = static_cast<double>(n);
        term *= (a + dn) * (b + dn) * z / ((c + dn) * (dn + 1.0));
        sum += term;
        if (std::fabs(term) <= ctl.rel_tol * std::fabs(sum)) return sum;
    }
    throw ConvergenceError("gauss_2f1: series did not converge within max_terms");
}

// Gamma relation at unit argument: 2F1(a,b;c;1) = G(c)G(c-a-b) / (G(c-a)G(c-b)).
double gauss_2f1_at_one(double a, double b, double c) {
    const double s = c - a - b;
    if (!(s > 0.0))
        throw DivergenceError("gauss_2f1: series diverges at z = 1 (requires c - a - b > 0)");
    const SignedLog num1 = ln_gamma_signed(c);
    const SignedLog num2 = ln_gamma_signed(s);
    const SignedLog den1 = ln_gamma_signed(c - a);
    const SignedLog den2 = ln_gamma_signed(c - b);
    if (den1.sign == 0 || den2.sign == 0) return 0.0;  // reciprocal of a Gamma pole
    if (num1.sign == 0 || num2.sign == 0)
        throw std::domain_error("gauss_2f1: Gamma pole at z = 1");
    const int sign = num1.sign * num2.sign * den1.sign * den2.sign;
    return sign * std::exp(num1.log_abs + num2.log_abs - den1.log_abs - den2.log_abs);
}

// Linear transformation to series in w = 1 - z (Abramowitz & Stegun 15.3.6),
// used near the unit argument where the defining series needs O(1/w) terms.
// Requires s = c - a - b away from the integers.
double gauss_2f1_near_one(double a, double b, double c, double z, const SeriesControl& ctl) {
    const double w = 1.0 - z;
    const double s = c - a - b;
    const SignedLog gc = ln_gamma_signed(c);
    const SignedLog gs = ln_gamma_signed(s);
    const SignedLog gms = ln_gamma_signed(-s);
    const SignedLog gca = ln_gamma_signed(c - a);
    const SignedLog gcb = ln_gamma_signed(c - b);
    const SignedLog ga = ln_gamma_signed(a);
    const SignedLog gb = ln_gamma_signed(b);

    double first = 0.0;
    if (gca.sign != 0 && gcb.sign != 0) {
        const int sign = gc.sign * gs.sign * gca.sign * gcb.sign;
        first = sign *
                std::exp((gc.log_abs + gs.log_abs) - (gca.log_abs + gcb.log_abs)) *
                direct_series(a, b, 1.0 - s, w, ctl);
    }
    double second = 0.0;
    if (ga.sign != 0 && gb.sign != 0) {
        const int sign = gc.sign * gms.sign * ga.sign * gb.sign;
        second = sign *
                 std::exp((gc.log_abs + gms.log_abs) - (ga.log_abs + gb.log_abs) +
                          s * std::log(w)) *
                 direct_series(c - a, c - b, 1.0 + s, w, ctl);
    }
    return first + second;
}

}  // namespace

double ln_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("ln_gamma: requires x > 0");
    return std::lgamma(x);
}

SignedLog ln_gamma_signed(double x) {
    if (x > 0.0) return {1, std::lgamma(x)};
    if (is_nonpositive_integer(x)) return {0, std::numeric_limits<double>::infinity()};
    // Gamma alternates sign between consecutive nonpositive integers;
    // sign(Gamma(x)) = sign(sin(pi x)) for x < 0.
    const int sign = std::sin(kPi * x) > 0.0 ? 1 : -1;
    return {sign, std::lgamma(x)};
}

double digamma(double x) {
    if (std::isnan(x)) throw std::domain_error("digamma: NaN argument");
    if (x <= 0.0) {
        if (is_nonpositive_integer(x)) throw std::domain_error("digamma: pole at nonpositive integer");
        return digamma(1.0 - x) - kPi / std::tan(kPi * x);
    }
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // Asymptotic series with Bernoulli coefficients through x^{-12}.
    const double tail =
        inv2 * (1.0 / 12.0 -
        inv2 * (1.0 / 120.0 -
        inv2 * (1.0 / 252.0 -
        inv2 * (1.0 / 240.0 -
        inv2 * (1.0 / 132.0 -
        inv2 * (691.0 / 32760.0))))));
    return acc + std::log(x) - 0.5 * inv - tail;
}

double beta_fn(double p, double q) {
    if (!(p > 0.0) || !(q > 0.0)) throw std::domain_error("beta_fn: requires p, q > 0");
    return std::exp(std::lgamma(p) + std::lgamma(q) - std::lgamma(p + q));
}

SignedLog pochhammer_ln(double a, long n) {
    if (n < 0) throw std::domain_error("pochhammer_ln: requires n >= 0");
    if (n == 0) return {1, 0.0};
    if (a > 0.0) return {1, std::lgamma(a + static_cast<double>(n)) - std::lgamma(a)};
    int sign = 1;
    double log_abs = 0.0;
    for (long k = 0; k < n; ++k) {
        const double factor = a + static_cast<double>(k);
        if (factor == 0.0) return {0, -std::numeric_limits<double>::infinity()};
        if (factor < 0.0) sign = -sign;
        log_abs += std::log(std::fabs(factor));
    }
    return {sign, log_abs};
}

double gauss_2f1(const Hyper2F1Args& q, const SeriesControl& ctl) {
    check_2f1_args(q);
    check_control(ctl);
    if (q.z == 1.0) return gauss_2f1_at_one(q.a, q.b, q.c);

    // terminating polynomial: the series is exact and cheap at any z
    const bool terminating = is_nonpositive_integer(q.a) || is_nonpositive_integer(q.b);
    if (!terminating && q.z >= 0.996) {
        const double s = q.c - q.a - q.b;
        if (std::fabs(s - std::round(s)) > 0.02)
            return gauss_2f1_near_one(q.a, q.b, q.c, q.z, ctl);
        // s too close to an integer for the transformation: sum the defining
        // series. The truncation tail behind the stop rule scales like
        // rel_tol/(1-z), so the per-term tolerance tightens by (1-z); the
        // term budget grows like log(1/rel_tol)/(1-z).
        SeriesControl escalated = ctl;
        escalated.rel_tol = std::max(ctl.rel_tol * (1.0 - q.z), 4e-16);
        const double needed = 2.0 * std::log(1.0 / escalated.rel_tol) / (1.0 - q.z) + 1000.0;
        escalated.max_terms =
            std::max(ctl.max_terms, static_cast<long>(std::min(1e8, needed)));
        return direct_series(q.a, q.b, q.c, q.z, escalated);
    }
    return direct_series(q.a, q.b, q.c, q.z, ctl);
}

double kdf_f221(double a1, double a2, double b1, double b2, double d1,
                double r1, double r2, double s1,
                double x, double y, const SeriesControl& ctl) {
    check_control(ctl);
    for (double denom : {r1, r2, s1}) {
        if (is_nonpositive_integer(denom))
            throw std::domain_error("kdf_f221: denominator parameter is zero or a negative integer");
    }
    if (!(std::fabs(x) <= 1.0 && std::fabs(y) <= 1.0))
        throw std::domain_error("kdf_f221: requires |x| <= 1 and |y| <= 1");

    // term(m, n) = P_{m+n} * u_m * v_n with
    //   P_k = (a1)_k (a2)_k / ((r1)_k (r2)_k),
    //   u_m = (b1)_m (b2)_m x^m / ((s1)_m m!),
    //   v_n = (d1)_n y^n / n!,
    // so the anti-diagonal block T_k = P_k * sum_m u_m v_{k-m}.
    std::vector<double> u{1.0};
    std::vector<double> v{1.0};
    double p = 1.0;
    double sum = 0.0;
    for (long k = 0; k < ctl.max_terms; ++k) {
        if (k > 0) {
            const double j = static_cast<double>(k - 1);
            const double dk = static_cast<double>(k);
            u.push_back(u.back() * (b1 + j) * (b2 + j) * x / ((s1 + j) * dk));
            v.push_back(v.back() * (d1 + j) * y / dk);
            p *= (a1 + j) * (a2 + j) / ((r1 + j) * (r2 + j));
        }
        double conv = 0.0;
        for (long m = 0; m <= k; ++m) conv += u[static_cast<size_t>(m)] * v[static_cast<size_t>(k - m)];
        const double block = p * conv;
        sum += block;
        if (k >= 1 && std::fabs(block) <= ctl.rel_tol * std::fabs(sum)) return sum;
    }
    throw ConvergenceError("kdf_f221: double series did not converge within max_terms anti-diagonals");
}

namespace {

enum class WhichParam { a, b, c };

// Unit-argument limit via the differentiated Gamma relation, valid on the
// open set c - a - b > 0 where the relation holds identically.
double d2f1_at_one(const Hyper2F1Args& q, WhichParam which) {
    const double s = q.c - q.a - q.b;
    if (!(s > 0.0))
        throw DivergenceError("d2f1: parameter derivative diverges at z = 1 (requires c - a - b > 0)");
    const double f1 = gauss_2f1_at_one(q.a, q.b, q.c);
    if (f1 == 0.0)
        throw std::domain_error("d2f1: derivative at z = 1 not supported at a Gamma pole");
    switch (which) {
        case WhichParam::a: return f1 * (digamma(q.c - q.a) - digamma(s));
        case WhichParam::b: return f1 * (digamma(q.c - q.b) - digamma(s));
        case WhichParam::c: return f1 * (digamma(q.c) + digamma(s) - digamma(q.c - q.a) - digamma(q.c - q.b));
    }
    return 0.0;
}

}  // namespace

double d2f1_da(const Hyper2F1Args& q, const SeriesControl& ctl) {
    check_2f1_args(q);
    if (q.z == 1.0) return d2f1_at_one(q, WhichParam::a);
    if (q.z == 0.0 || q.b == 0.0) return 0.0;
    return q.z * q.b / q.c *
           kdf_f221(q.a + 1.0, q.b + 1.0, 1.0, q.a, 1.0, 2.0, q.c + 1.0, q.a + 1.0, q.z, q.z, ctl);
}

double d2f1_db(const Hyper2F1Args& q, const SeriesControl& ctl) {
    check_2f1_args(q);
    if (q.z == 1.0) return d2f1_at_one(q, WhichParam::b);
    if (q.z == 0.0 || q.a == 0.0) return 0.0;
    return q.z * q.a / q.c *
           kdf_f221(q.a + 1.0, q.b + 1.0, 1.0, q.b, 1.0, 2.0, q.c + 1.0, q.b + 1.0, q.z, q.z, ctl);
}

double d2f1_dc(const Hyper2F1Args& q, const SeriesControl& ctl) {
    check_2f1_args(q);
    if (q.z == 1.0) return d2f1_at_one(q, WhichParam::c);
    if (q.z == 0.0 || q.a == 0.0 || q.b == 0.0) return 0.0;
    return -q.z * q.a * q.b / (q.c * q.c) *
           kdf_f221(q.a + 1.0, q.b + 1.0, 1.0, q.c, 1.0, 2.0, q.c + 1.0, q.c + 1.0, q.z, q.z, ctl);
}

}  // namespace traplab::specfun
