#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracle_helpers.hpp"
#include "traplab/errors.hpp"
#include "traplab/rng.hpp"
#include "traplab/specfun.hpp"

using namespace traplab;
using specfun::Hyper2F1Args;
using specfun::SeriesControl;

namespace {

double rel_err(double got, double want) {
    return std::fabs(got - want) / std::max(1e-300, std::fabs(want));
}

}  // namespace

TEST_CASE("ln_gamma matches high-precision references") {
    CHECK(specfun::ln_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-13));
    // Gamma(1/2) = sqrt(pi)
    CHECK(rel_err(specfun::ln_gamma(0.5), 0.57236494292470008707) < 1e-13);
    // Gamma(5) = 4!
    CHECK(rel_err(specfun::ln_gamma(5.0), 3.1780538303479456196) < 1e-13);
    CHECK(rel_err(specfun::ln_gamma(20.25), std::lgamma(20.25)) < 1e-13);
    CHECK_THROWS_AS(specfun::ln_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(specfun::ln_gamma(-1.5), std::domain_error);
}

TEST_CASE("digamma agrees with the lgamma difference quotient") {
    for (double x : {0.1, 0.5, 1.0, 2.7, 6.2, 15.0, 120.0}) {
        const double fd = oracle::central_diff([](double t) { return std::lgamma(t); }, x, 1e-6);
        CHECK(std::fabs(specfun::digamma(x) - fd) < 1e-8 * std::max(1.0, std::fabs(fd)));
    }
    // psi(1) = -EulerGamma
    CHECK(rel_err(specfun::digamma(1.0), -0.57721566490153286061) < 1e-13);
    // reflection below zero
    const double fd = oracle::central_diff([](double t) { return std::lgamma(t); }, -0.7, 1e-7);
    CHECK(std::fabs(specfun::digamma(-0.7) - fd) < 1e-6);
    CHECK_THROWS_AS(specfun::digamma(0.0), std::domain_error);
    CHECK_THROWS_AS(specfun::digamma(-3.0), std::domain_error);
}

TEST_CASE("beta_fn values and identities") {
    CHECK(specfun::beta_fn(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rel_err(specfun::beta_fn(1.0, 2.0), 0.5) < 1e-13);  // B(1, gamma) = 1/gamma
    // quadrature oracle for B(2, 3) = int t (1-t)^2 dt
    const double quad = oracle::integrate_simpson(
        [](double t) { return t * (1.0 - t) * (1.0 - t); }, 0.0, 1.0, 1e-14);
    CHECK(rel_err(specfun::beta_fn(2.0, 3.0), quad) < 1e-12);
    CHECK(rel_err(specfun::beta_fn(2.0, 3.0), 1.0 / 12.0) < 1e-13);
    CHECK_THROWS_AS(specfun::beta_fn(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(specfun::beta_fn(1.0, -2.0), std::domain_error);

    rng::Stream rng(2024, 7);
    for (int i = 0; i < 50; ++i) {
        const double p = 0.1 + 6.0 * rng.uniform01();
        const double q = 0.1 + 6.0 * rng.uniform01();
        CHECK(rel_err(specfun::beta_fn(p, q), specfun::beta_fn(q, p)) < 1e-13);
        // B(p, q+1) = q B(p, q) / (p + q)
        CHECK(rel_err(specfun::beta_fn(p, q + 1.0), q * specfun::beta_fn(p, q) / (p + q)) < 1e-12);
    }
}

TEST_CASE("pochhammer_ln signs and magnitudes") {
    auto v = specfun::pochhammer_ln(3.0, 0);
    CHECK(v.sign == 1);
    CHECK(v.log_abs == 0.0);

    v = specfun::pochhammer_ln(2.0, 3);  // 2*3*4 = 24
    CHECK(v.sign == 1);
    CHECK(rel_err(v.log_abs, std::log(24.0)) < 1e-13);

    v = specfun::pochhammer_ln(-1.5, 2);  // (-1.5)(-0.5) = 0.75
    CHECK(v.sign == 1);
    CHECK(rel_err(v.log_abs, std::log(0.75)) < 1e-13);

    v = specfun::pochhammer_ln(-2.5, 1);
    CHECK(v.sign == -1);

    v = specfun::pochhammer_ln(-2.0, 3);  // contains the zero factor
    CHECK(v.sign == 0);
    CHECK(std::isinf(v.log_abs));

    // random cross-check against the direct product
    rng::Stream rng(11, 0);
    for (int i = 0; i < 60; ++i) {
        const double a = -4.0 + 9.0 * rng.uniform01();
        const long n = static_cast<long>(rng.uniform01() * 12);
        double prod = 1.0;
        for (long k = 0; k < n; ++k) prod *= a + static_cast<double>(k);
        const auto got = specfun::pochhammer_ln(a, n);
        if (prod == 0.0) {
            CHECK(got.sign == 0);
        } else {
            CHECK(got.sign == (prod > 0 ? 1 : -1));
            CHECK(rel_err(got.log_abs, std::log(std::fabs(prod))) < 1e-11);
        }
    }
}

TEST_CASE("gauss_2f1 known values") {
    // binomial identity 2F1(a, b; b; z) = (1-z)^{-a}
    CHECK(rel_err(specfun::gauss_2f1({2.0, 5.0, 5.0, 0.3}), 2.0408163265306122) < 1e-12);
    // -log(1-z)/z, cross-checked against the brute-force series oracle
    const double brute = oracle::hyp2f1_bruteforce(1.0, 1.0, 2.0, 0.5);
    const double got = specfun::gauss_2f1({1.0, 1.0, 2.0, 0.5});
    CHECK(rel_err(got, brute) < 1e-12);
    CHECK(rel_err(got, -std::log(0.5) / 0.5) < 1e-12);
    CHECK(rel_err(got, 1.3862943611198906) < 1e-12);
    // z = 1 Gamma relation: 2F1(1,1;3;1) = 2
    CHECK(rel_err(specfun::gauss_2f1({1.0, 1.0, 3.0, 1.0}), 2.0) < 1e-12);
    // z = 0
    CHECK(specfun::gauss_2f1({0.7, -1.3, 2.4, 0.0}) == 1.0);
    // terminating polynomial: 2F1(-2, b; c; z)
    const double a = -2.0, b = 1.3, c = 2.2, z = 0.77;
    const double poly = 1.0 + a * b / c * z + a * (a + 1.0) * b * (b + 1.0) / (2.0 * c * (c + 1.0)) * z * z;
    CHECK(rel_err(specfun::gauss_2f1({a, b, c, z}), poly) < 1e-13);
}

TEST_CASE("gauss_2f1 identity and symmetry properties on a random grid") {
    rng::Stream rng(99, 3);
    for (int i = 0; i < 100; ++i) {
        const double a = -3.0 + 6.0 * rng.uniform01();
        const double b = 0.2 + 4.0 * rng.uniform01();
        const double z = 0.95 * rng.uniform01();
        // (1-z)^{-a} identity
        CHECK(rel_err(specfun::gauss_2f1({a, b, b, z}), std::pow(1.0 - z, -a)) < 1e-10);
        // exact term-level symmetry
        const double c = 0.5 + 4.0 * rng.uniform01();
        CHECK(specfun::gauss_2f1({a, b, c, z}) == specfun::gauss_2f1({b, a, c, z}));
    }
}

TEST_CASE("gauss_2f1 at z = 1 equals the extrapolated series") {
    rng::Stream rng(123, 1);
    for (int i = 0; i < 25; ++i) {
        const double a = -2.0 + 4.0 * rng.uniform01();
        const double b = -2.0 + 4.0 * rng.uniform01();
        const double s = 0.55 + 2.4 * rng.uniform01();  // c - a - b, bounded away from 0.5
        const double c = a + b + s;
        if (c < 0.3 || std::fabs(c - std::round(c)) < 1e-3) continue;
        if (std::fabs(s - std::round(s)) < 1e-3) continue;
        // series nodes via the independent recurrence oracle: near z = 1 the
        // series needs order 1/(1-z) terms and machine-level rel_tol, since
        // the truncation tail scales like rel_tol/(1-z)
        const double extrapolated = oracle::extrapolate_geometric(
            [&](double eps) { return oracle::hyp2f1_series_recurrence(a, b, c, 1.0 - eps); },
            10, 20, s);
        const double at_one = specfun::gauss_2f1({a, b, c, 1.0});
        CHECK(rel_err(at_one, extrapolated) < 1e-8);
    }
}

TEST_CASE("gauss_2f1 near the unit argument matches the plain series") {
    rng::Stream rng(271828, 4);
    for (int i = 0; i < 40; ++i) {
        const double a = -2.0 + 4.0 * rng.uniform01();
        const double b = -2.0 + 4.0 * rng.uniform01();
        const double s = (rng.uniform01() < 0.3)
                             ? 1.0 + 0.015 * (rng.uniform01() - 0.5)   // near-integer exponent
                             : 0.3 + 2.5 * rng.uniform01();
        const double c = a + b + s;
        if (std::fabs(c - std::round(c)) < 0.05 && c < 0.5) continue;
        const double z = 1.0 - std::pow(10.0, -3.0 - 3.0 * rng.uniform01());  // z in [0.999, 1)
        const double got = specfun::gauss_2f1({a, b, c, z});
        // the oracle's own truncation tail is rel_tol/(1-z), so the bound
        // loosens as z approaches 1
        const double plain = oracle::hyp2f1_series_recurrence(a, b, c, z);
        CHECK(rel_err(got, plain) < 1e-11 / (1.0 - z) + 1e-10);
    }
    // symmetry holds bitwise through the transformation branch too
    CHECK(specfun::gauss_2f1({0.7, -1.3, 2.9, 0.9999}) ==
          specfun::gauss_2f1({-1.3, 0.7, 2.9, 0.9999}));
}

TEST_CASE("gauss_2f1 error paths") {
    CHECK_THROWS_AS(specfun::gauss_2f1({1.0, 1.0, -2.0, 0.5}), std::domain_error);  // c pole
    CHECK_THROWS_AS(specfun::gauss_2f1({1.0, 1.0, 2.0, 1.5}), std::domain_error);   // z out of range
    CHECK_THROWS_AS(specfun::gauss_2f1({1.0, 1.0, 2.0, -0.1}), std::domain_error);
    // divergence at z = 1 with c - a - b <= 0
    CHECK_THROWS_AS(specfun::gauss_2f1({1.0, 1.0, 2.0, 1.0}), DivergenceError);
    CHECK_THROWS_AS(specfun::gauss_2f1({2.0, 2.0, 3.0, 1.0}), DivergenceError);
    // max_terms exhausted
    SeriesControl tight{1e-12, 5};
    CHECK_THROWS_AS(specfun::gauss_2f1({1.0, 1.0, 2.0, 0.9}, tight), ConvergenceError);
    // invalid control
    CHECK_THROWS_AS(specfun::gauss_2f1({1.0, 1.0, 2.0, 0.5}, SeriesControl{-1.0, 100}),
                    std::domain_error);
}

TEST_CASE("kdf_f221 trivial and matched-parameter cases") {
    // only the (0, 0) term survives
    CHECK(specfun::kdf_f221(1.1, 2.2, 0.7, 0.4, 1.9, 3.0, 1.5, 2.5, 0.0, 0.0) == 1.0);
    // numerator params matching denominators pairwise collapse the series to
    // (1-x)^{-b2} (1-y)^{-d1}; cross-checked against the naive double loop
    const double brute = oracle::kdf_bruteforce(2.0, 1.5, 1.2, 0.8, 0.6, 2.0, 1.5, 1.2, 0.2, 0.2);
    const double got = specfun::kdf_f221(2.0, 1.5, 1.2, 0.8, 0.6, 2.0, 1.5, 1.2, 0.2, 0.2);
    CHECK(rel_err(got, brute) < 1e-12);
    CHECK(rel_err(got, std::pow(0.8, -0.8) * std::pow(0.8, -0.6)) < 1e-12);
    CHECK(rel_err(got, 1.3667025924290976) < 1e-12);
}

TEST_CASE("kdf_f221 agrees with the naive double loop on random parameters") {
    rng::Stream rng(7, 5);
    int tested = 0;
    while (tested < 20) {
        const double a1 = -2.0 + 4.0 * rng.uniform01();
        const double a2 = -2.0 + 4.0 * rng.uniform01();
        const double b1 = -2.0 + 4.0 * rng.uniform01();
        const double b2 = -2.0 + 4.0 * rng.uniform01();
        const double d1 = -2.0 + 4.0 * rng.uniform01();
        const double r1 = 0.4 + 3.0 * rng.uniform01();
        const double r2 = 0.4 + 3.0 * rng.uniform01();
        const double s1 = 0.4 + 3.0 * rng.uniform01();
        const double x = -0.5 + rng.uniform01();
        const double y = -0.5 + rng.uniform01();
        const double brute = oracle::kdf_bruteforce(a1, a2, b1, b2, d1, r1, r2, s1, x, y);
        const double got = specfun::kdf_f221(a1, a2, b1, b2, d1, r1, r2, s1, x, y);
        CHECK(std::fabs(got - brute) <= 1e-10 * std::max(1.0, std::fabs(brute)));
        ++tested;
    }
}

TEST_CASE("kdf_f221 error paths") {
    CHECK_THROWS_AS(specfun::kdf_f221(1, 1, 1, 1, 1, -2.0, 1.5, 2.5, 0.2, 0.2),
                    std::domain_error);
    CHECK_THROWS_AS(specfun::kdf_f221(1, 1, 1, 1, 1, 2.0, 1.5, 2.5, 1.2, 0.2),
                    std::domain_error);
    SeriesControl tight{1e-12, 3};
    CHECK_THROWS_AS(specfun::kdf_f221(2.0, 2.0, 1.0, 1.0, 1.0, 2.0, 3.0, 2.0, 0.9, 0.9, tight),
                    ConvergenceError);
}

TEST_CASE("2F1 parameter derivatives: frozen values and oracles") {
    // b = 0 makes 2F1 identically 1 in a
    CHECK(specfun::d2f1_da({1.7, 0.0, 2.3, 0.4}) == 0.0);
    // d/da at (1,1;2;0.3): matches the kdf route and the finite difference
    const double da = specfun::d2f1_da({1.0, 1.0, 2.0, 0.3});
    CHECK(rel_err(da, 0.21202835938949648) < 1e-10);
    const double fd_da = oracle::central_diff(
        [](double t) { return specfun::gauss_2f1({t, 1.0, 2.0, 0.3}); }, 1.0, 1e-6);
    CHECK(rel_err(da, fd_da) < 1e-6);
    // d/db at (1,1;2;0.5) against the digamma-weighted series oracle
    const double db = specfun::d2f1_db({1.0, 1.0, 2.0, 0.5});
    CHECK(rel_err(db, 0.48045301391820142) < 1e-10);
    CHECK(rel_err(db, oracle::d2f1_digamma_series(1.0, 1.0, 2.0, 0.5, oracle::Wrt::b)) < 1e-10);
    // d/dc at (0.5,0.5;1.5;0.25) against the digamma-weighted series oracle
    const double dc = specfun::d2f1_dc({0.5, 0.5, 1.5, 0.25});
    CHECK(rel_err(dc, -0.033956695415641678) < 1e-10);
    CHECK(rel_err(dc, oracle::d2f1_digamma_series(0.5, 0.5, 1.5, 0.25, oracle::Wrt::c)) < 1e-10);
}

TEST_CASE("2F1 parameter derivatives match central finite differences on a random grid") {
    rng::Stream rng(31415, 2);
    const double h = 1e-6;
    int tested = 0;
    while (tested < 100) {
        const double a = -3.0 + 6.0 * rng.uniform01();
        const double b = -3.0 + 6.0 * rng.uniform01();
        const double c = 0.5 + 4.5 * rng.uniform01();
        const double z = 0.9 * rng.uniform01();
        // keep clear of the kdf denominator poles at a, b = -1 and of
        // terminating-parameter integers where the derivative is still fine
        // but the finite difference straddles a polynomial kink
        if (std::fabs(a + 1.0) < 0.05 || std::fabs(b + 1.0) < 0.05) continue;
        if (std::fabs(a - std::round(a)) < 0.02 && a < 0.5) continue;
        if (std::fabs(b - std::round(b)) < 0.02 && b < 0.5) continue;

        const double da = specfun::d2f1_da({a, b, c, z});
        const double db = specfun::d2f1_db({a, b, c, z});
        const double dc = specfun::d2f1_dc({a, b, c, z});
        const double fa = oracle::central_diff(
            [&](double t) { return specfun::gauss_2f1({t, b, c, z}); }, a, h);
        const double fb = oracle::central_diff(
            [&](double t) { return specfun::gauss_2f1({a, t, c, z}); }, b, h);
        const double fc = oracle::central_diff(
            [&](double t) { return specfun::gauss_2f1({a, b, t, z}); }, c, h);
        CHECK(std::fabs(da - fa) <= 1e-6 * std::max({1.0, std::fabs(da), std::fabs(fa)}));
        CHECK(std::fabs(db - fb) <= 1e-6 * std::max({1.0, std::fabs(db), std::fabs(fb)}));
        CHECK(std::fabs(dc - fc) <= 1e-6 * std::max({1.0, std::fabs(dc), std::fabs(fc)}));
        ++tested;
    }
}

TEST_CASE("2F1 parameter derivatives at z = 1") {
    struct Point { double a, b, c; };
    for (const Point& pt : {Point{0.324, -0.08, 1.324}, Point{0.9, -0.4, 2.1},
                            Point{1.2, 0.3, 3.4}}) {
        const double s = pt.c - pt.a - pt.b;
        REQUIRE(s > 0.5);
        const double da = specfun::d2f1_da({pt.a, pt.b, pt.c, 1.0});
        const double db = specfun::d2f1_db({pt.a, pt.b, pt.c, 1.0});
        const double dc = specfun::d2f1_dc({pt.a, pt.b, pt.c, 1.0});
        // digamma-weighted series summed directly at z = 1; its truncated
        // tail decays only like N^{-s}, so the tolerance is oracle-limited
        CHECK(rel_err(da, oracle::d2f1_digamma_series(pt.a, pt.b, pt.c, 1.0, oracle::Wrt::a)) < 1e-4);
        CHECK(rel_err(db, oracle::d2f1_digamma_series(pt.a, pt.b, pt.c, 1.0, oracle::Wrt::b)) < 1e-4);
        CHECK(rel_err(dc, oracle::d2f1_digamma_series(pt.a, pt.b, pt.c, 1.0, oracle::Wrt::c)) < 1e-4);
        // the sharp check: extrapolate the series oracle from z = 1 - 2^{-k}
        for (auto wrt : {oracle::Wrt::a, oracle::Wrt::b, oracle::Wrt::c}) {
            const double want = wrt == oracle::Wrt::a ? da : (wrt == oracle::Wrt::b ? db : dc);
            const double got = oracle::extrapolate_geometric(
                [&](double eps) {
                    return oracle::d2f1_digamma_series(pt.a, pt.b, pt.c, 1.0 - eps, wrt,
                                                       5000000);
                },
                8, 17, s, 2);
            CHECK(rel_err(want, got) < 1e-7);
        }
    }
    // divergence guard
    CHECK_THROWS_AS(specfun::d2f1_da({1.0, 1.0, 2.0, 1.0}), DivergenceError);
}
