#pragma once

#include "hmt/cost.hpp"
#include "hmt/types.hpp"

namespace hmt {

/// Two source points with one target value each: x with xi, y with zeta.
/// The averaged-Hessian machinery integrates D2h along the bilinear path
///   z(s,t) = y - zeta + s (zeta - xi) + t (x - y),   (s,t) in [0,1]^2.
struct Quadruple {
    Vec x, y, xi, zeta;

    int dim() const { return static_cast<int>(x.size()); }
    bool consistent() const {
        return x.size() == y.size() && x.size() == xi.size() && x.size() == zeta.size() &&
               x.size() >= 1;
    }
    /// (y,x; zeta,xi) — swapping the roles of the two graph points.
    Quadruple exchanged() const { return {y, x, zeta, xi}; }
};

struct FormOptions {
    int order = 16;              // Gauss points per axis
    int max_subdivision = 6;     // adaptive quadtree depth near path zeros
    bool halved_order_estimate = true; // compare order q with q/2 (else q-1)
    double nonconv_rel_tol = 1e-6;     // converged iff est_error below this, relatively
};

/// Averaged Hessian A over the path, the scalar weight Phi, and a
/// certified error estimate. est_error is calibrated so that
/// |monotone_pair_gap - form_gap| <= est_error * |x-y| * |xi-zeta| and the
/// two-sided bounds of sandwich_check hold within 3 * est_error * |v|^2.
struct FormResult {
    Mat A;                  // symmetric n x n
    double Phi = 0.0;       // >= 0; zero only for the fully degenerate quadruple (p > 2)
    int quad_order = 0;
    double est_error = 0.0;
    double presym_asymmetry = 0.0; // max-norm of A - A^T before symmetrization
    bool converged = true;
    int cells = 1;          // quadrature cells after adaptive subdivision
};

/// Tensor Gauss-Legendre approximation of the path integrals. Interior
/// nodes never evaluate D2h at the origin exactly; for non-polynomial
/// degrees the unit square is subdivided adaptively where the path comes
/// close to zero.
FormResult form_matrix(const CostSpec& cost, const Quadruple& q,
                       int quad_order = 16, const FormOptions& opts = {});

/// Exact (no quadrature) monotonicity gap
///   c(x,zeta) + c(y,xi) - c(x,xi) - c(y,zeta).
/// Nonnegative iff the two graph points satisfy h-monotonicity. Returns
/// exactly zero when x == y or xi == zeta bitwise.
double monotone_pair_gap(const CostSpec& cost, const Quadruple& q);

/// <A (x-y), xi-zeta> with A from form_matrix; equal to monotone_pair_gap
/// in exact arithmetic. Pass `out` to inspect quadrature convergence.
double form_gap(const CostSpec& cost, const Quadruple& q, int quad_order = 16,
                FormResult* out = nullptr, const FormOptions& opts = {});

struct SandwichReport {
    bool pass = true;
    double lower = 0.0;       // lambda * Phi * |v|^2
    double upper = 0.0;       // Lambda * Phi * |v|^2
    double mid = 0.0;         // <A v, v>
    double tol_used = 0.0;    // tol + 3 * est_error * |v|^2
    double lower_excess = 0.0; // max(0, lower - tol - mid)
    double upper_excess = 0.0; // max(0, mid - upper - tol)
    FormResult form;
};

/// Two-sided ellipticity check lambda*Phi*|v|^2 <= <Av,v> <= Lambda*Phi*|v|^2
/// with the cost's certified constants; the applied tolerance is
/// tol + 3 * est_error * |v|^2.
SandwichReport sandwich_check(const CostSpec& cost, const Quadruple& q, const Vec& v,
                              int quad_order = 16, double tol = 0.0,
                              const FormOptions& opts = {});

} // namespace hmt
