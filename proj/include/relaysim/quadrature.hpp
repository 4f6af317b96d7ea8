#ifndef RELAYSIM_QUADRATURE_HPP
#define RELAYSIM_QUADRATURE_HPP

#include <functional>

namespace relaysim {

struct QuadratureResult {
    double value = 0.0;
    double error_bound = 0.0;
    bool converged = true;
};

/// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b] to the
/// requested absolute tolerance. Subdivision order is fixed (always bisect
/// the worst half first, depth-first), so the value and the error bound are
/// reproducible. `converged` is false when max_depth was hit before the
/// error estimate dropped under the tolerance.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, int max_depth = 48);

}  // namespace relaysim

#endif
