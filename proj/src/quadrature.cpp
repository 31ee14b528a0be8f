#include "traplab/quadrature.hpp"

#include <cmath>

#include "traplab/errors.hpp"

namespace traplab::quadrature {

namespace {

// 15-point Kronrod nodes/weights on [-1, 1] with the embedded 7-point Gauss
// rule (weights for the odd-indexed Kronrod nodes).
constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
    double kronrod;
    double error;
};

PanelResult gk15(const std::function<double(double)>& f, double lo, double hi) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    double fk[15];
    for (int i = 0; i < 7; ++i) {
        fk[i] = f(mid - half * kKronrodNodes[i]);
        fk[14 - i] = f(mid + half * kKronrodNodes[i]);
    }
    fk[7] = f(mid);

    double kronrod = kKronrodWeights[7] * fk[7];
    for (int i = 0; i < 7; ++i) kronrod += kKronrodWeights[i] * (fk[i] + fk[14 - i]);
    kronrod *= half;

    double gauss = kGaussWeights[3] * fk[7];
    for (int i = 0; i < 3; ++i) gauss += kGaussWeights[i] * (fk[2 * i + 1] + fk[13 - 2 * i]);
    gauss *= half;

    return {kronrod, std::fabs(kronrod - gauss)};
}

double integrate_rec(const std::function<double(double)>& f, double lo, double hi,
                     double abs_tol, int depth) {
    const PanelResult panel = gk15(f, lo, hi);
    if (panel.error <= abs_tol || hi - lo <= 1e-15 * std::fabs(hi)) return panel.kronrod;
    if (depth <= 0) throw ConvergenceError("quadrature: refinement budget exhausted");
    const double mid = 0.5 * (lo + hi);
    return integrate_rec(f, lo, mid, 0.5 * abs_tol, depth - 1) +
           integrate_rec(f, mid, hi, 0.5 * abs_tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double abs_tol, int max_depth) {
    if (lo == hi) return 0.0;
    if (!(abs_tol > 0.0)) throw std::domain_error("quadrature: abs_tol must be > 0");
    double sign = 1.0;
    if (lo > hi) {
        std::swap(lo, hi);
        sign = -1.0;
    }
    return sign * integrate_rec(f, lo, hi, abs_tol, max_depth);
}

}  // namespace traplab::quadrature
