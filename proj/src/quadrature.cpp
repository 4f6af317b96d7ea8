#include "relaysim/quadrature.hpp"

#include <cmath>

namespace relaysim {
namespace {

// 15-point Kronrod nodes/weights on [-1, 1] with the embedded 7-point Gauss
// rule (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelResult {
    double kronrod;
    double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double result_gauss = fc * kWg[3];
    double result_kronrod = fc * kWgk[7];

    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        result_kronrod += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) result_gauss += kWg[j / 2] * (f1 + f2);
    }
    result_gauss *= half;
    result_kronrod *= half;
    return {result_kronrod, std::abs(result_kronrod - result_gauss)};
}

// The first two levels always subdivide; a feature narrower than the node
// spacing of the opening panel would otherwise pass both rules unseen.
constexpr int kMinDepth = 2;

void adapt(const std::function<double(double)>& f, double a, double b, double tol,
           int depth, int max_depth, double& value, double& err, bool& converged) {
    if (depth >= kMinDepth) {
        const PanelResult panel = gk15(f, a, b);
        if (panel.error <= tol || depth >= max_depth) {
            value += panel.kronrod;
            err += panel.error;
            if (panel.error > tol) converged = false;
            return;
        }
    }
    const double mid = 0.5 * (a + b);
    adapt(f, a, mid, 0.5 * tol, depth + 1, max_depth, value, err, converged);
    adapt(f, mid, b, 0.5 * tol, depth + 1, max_depth, value, err, converged);
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, int max_depth) {
    QuadratureResult out;
    if (a == b) return out;
    adapt(f, a, b, abs_tol, 0, max_depth, out.value, out.error_bound, out.converged);
    return out;
}

}  // namespace relaysim
