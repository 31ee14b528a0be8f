#pragma once

#include "traplab/errors.hpp"

namespace traplab::specfun {

// Argument bundle for the Gauss hypergeometric function 2F1(a, b; c; z).
// All closed forms in this project evaluate at z = 1/y(x) with y(x) >= 1,
// so only z in [0, 1] is supported.
struct Hyper2F1Args {
    double a = 0.0;
    double b = 0.0;
    double c = 1.0;
    double z = 0.0;
};

// Termination policy for series evaluation: stop once the current term
// (or anti-diagonal block) drops below rel_tol times the running sum.
struct SeriesControl {
    double rel_tol = 1e-12;
    long max_terms = 100000;
};

// value = sign * exp(log_abs); sign == 0 encodes an exact zero.
struct SignedLog {
    int sign = 1;
    double log_abs = 0.0;
};

// log Gamma(x) for x > 0.
double ln_gamma(double x);

// Signed log Gamma(x) for any non-pole x; sign 0 with +inf log at poles.
SignedLog ln_gamma_signed(double x);

// psi(x) = d/dx log Gamma(x); reflection formula below zero.
double digamma(double x);

// B(p, q) = Gamma(p) Gamma(q) / Gamma(p + q), p, q > 0, via ln_gamma.
double beta_fn(double p, double q);

// Rising factorial (a)_n = a (a+1) ... (a+n-1) as sign and log-magnitude.
SignedLog pochhammer_ln(double a, long n);

// 2F1(a, b; c; z) on z in [0, 1]. z < 1 sums the defining series with the
// term recurrence; z = 1 uses the Gamma relation and requires c - a - b > 0.
double gauss_2f1(const Hyper2F1Args& args, const SeriesControl& ctl = {});

// Kampe de Feriet double series F^{2,2,1}_{2,1,0}:
//   sum_{m,n} [(a1)_{m+n} (a2)_{m+n} (b1)_m (b2)_m (d1)_n]
//           / [(r1)_{m+n} (r2)_{m+n} (s1)_m] * x^m/m! * y^n/n!
// summed over anti-diagonals m + n = k.
double kdf_f221(double a1, double a2, double b1, double b2, double d1,
                double r1, double r2, double s1,
                double x, double y, const SeriesControl& ctl = {});

// Derivatives of 2F1 with respect to its first, second and third parameter.
// For z < 1 these route through kdf_f221 with prefactors z*b/c, z*a/c and
// -z*a*b/c^2; at z = 1 the Gamma relation is differentiated instead, which
// needs c - a - b > 0.
double d2f1_da(const Hyper2F1Args& args, const SeriesControl& ctl = {});
double d2f1_db(const Hyper2F1Args& args, const SeriesControl& ctl = {});
double d2f1_dc(const Hyper2F1Args& args, const SeriesControl& ctl = {});

}  // namespace traplab::specfun
