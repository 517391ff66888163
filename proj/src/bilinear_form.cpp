#include "hmt/bilinear_form.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hmt/linalg.hpp"
#include "hmt/quadrature.hpp"

namespace hmt {

namespace {

struct Cell {
    double s0, s1, t0, t1;
    double width_s() const { return s1 - s0; }
    double width_t() const { return t1 - t0; }
};

struct PathIntegrand {
    Vec base, ds, dt; // z(s,t) = base + s*ds + t*dt
    Vec at(double s, double t) const { return base + s * ds + t * dt; }
};

// Minimum |z| over the tensor nodes of a cell.
double node_min_norm(const PathIntegrand& path, const Cell& c, const GaussRule& rule) {
    double lo = std::numeric_limits<double>::infinity();
    for (double gs : rule.nodes) {
        const double s = c.s0 + c.width_s() * gs;
        for (double gt : rule.nodes) {
            const double t = c.t0 + c.width_t() * gt;
            lo = std::min(lo, path.at(s, t).norm());
        }
    }
    return lo;
}

// True when the integrands are global polynomials (even integer degree),
// in which case Gauss rules are exact and subdivision is pointless.
bool polynomial_degree(double p) {
    return p == std::rint(p) && std::fmod(p, 2.0) == 0.0;
}

void accumulate_cell(const CostSpec& cost, const PathIntegrand& path, const Cell& c,
                     const GaussRule& rule, double p, Mat& a_sum, double& phi_sum) {
    const double area = c.width_s() * c.width_t();
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double s = c.s0 + c.width_s() * rule.nodes[i];
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            const double t = c.t0 + c.width_t() * rule.nodes[j];
            const double w = area * rule.weights[i] * rule.weights[j];
            const Vec z = path.at(s, t);
            a_sum += w * cost.hessian(z);
            phi_sum += (p == 2.0) ? w : w * std::pow(z.norm(), p - 2.0);
        }
    }
}

} // namespace

FormResult form_matrix(const CostSpec& cost, const Quadruple& q, int quad_order,
                       const FormOptions& opts) {
    if (!q.consistent()) throw std::invalid_argument("form_matrix: inconsistent dimensions");
    if (q.dim() != cost.dim()) throw std::invalid_argument("form_matrix: cost/quadruple dim mismatch");
    if (quad_order < 2) throw std::invalid_argument("form_matrix: quad_order must be >= 2");

    const int n = q.dim();
    const double p = cost.degree();
    PathIntegrand path{q.y - q.zeta, q.zeta - q.xi, q.x - q.y};

    int orders[3];
    orders[0] = quad_order;
    if (opts.halved_order_estimate) {
        orders[1] = std::max(2, quad_order / 2);
        orders[2] = std::max(2, quad_order / 4);
    } else {
        orders[1] = std::max(2, quad_order - 1);
        orders[2] = std::max(2, quad_order - 2);
    }
    const GaussRule rule_fine = gauss_legendre_unit(orders[0]);

    // Adaptive cell list: split while the finest rule's nodes come close to
    // a path zero relative to the cell's own span of z-values. Polynomial
    // integrands (even integer p) have no singularity and are integrated
    // exactly, so the full square is kept.
    std::vector<Cell> cells;
    const bool poly = polynomial_degree(p);
    const double ds_norm = path.ds.norm();
    const double dt_norm = path.dt.norm();
    std::vector<std::pair<Cell, int>> work{{{0.0, 1.0, 0.0, 1.0}, 0}};
    while (!work.empty()) {
        auto [c, level] = work.back();
        work.pop_back();
        bool split = false;
        if (!poly && level < opts.max_subdivision && cells.size() + work.size() < 20000) {
            const double span = 0.75 * (c.width_s() * ds_norm + c.width_t() * dt_norm);
            const double lo = node_min_norm(path, c, rule_fine);
            split = lo <= std::max(1e-12, span);
        }
        if (split) {
            const double sm = 0.5 * (c.s0 + c.s1);
            const double tm = 0.5 * (c.t0 + c.t1);
            work.push_back({{c.s0, sm, c.t0, tm}, level + 1});
            work.push_back({{sm, c.s1, c.t0, tm}, level + 1});
            work.push_back({{c.s0, sm, tm, c.t1}, level + 1});
            work.push_back({{sm, c.s1, tm, c.t1}, level + 1});
        } else {
            cells.push_back(c);
        }
    }

    Mat a[3];
    double phi[3];
    for (int k = 0; k < 3; ++k) {
        a[k] = Mat::Zero(n, n);
        phi[k] = 0.0;
        const GaussRule rule = (k == 0) ? rule_fine : gauss_legendre_unit(orders[k]);
        for (const Cell& c : cells) accumulate_cell(cost, path, c, rule, p, a[k], phi[k]);
    }

    FormResult res;
    res.quad_order = quad_order;
    res.cells = static_cast<int>(cells.size());
    res.presym_asymmetry = max_abs(a[0] - a[0].transpose());
    res.A = 0.5 * (a[0] + a[0].transpose());
    res.Phi = phi[0];

    // Certified error estimate from the last two refinement differences,
    // plus a roundoff floor that keeps the gap and sandwich inequalities
    // valid at machine precision. The e2 term covers integrands whose
    // composite error decays algebraically (paths grazing zero for
    // non-polynomial degrees), where a single difference can understate
    // the remaining error.
    const double lambda_cap = cost.bounds().Lambda;
    const double eps = std::numeric_limits<double>::epsilon();
    const double e1a = n * max_abs(a[0] - a[1]);
    const double e2a = n * max_abs(a[1] - a[2]);
    const double e1p = std::abs(phi[0] - phi[1]);
    const double e2p = std::abs(phi[1] - phi[2]);
    const double quad_part = 2.0 * std::max({e1a, 0.75 * e2a, lambda_cap * e1p,
                                             0.75 * lambda_cap * e2p});
    const double pd = dt_norm * (q.xi - q.zeta).norm(); // |x-y| * |xi-zeta|
    const double corner_scale = cost.h(q.y - q.zeta) + cost.h(q.y - q.xi) +
                                cost.h(q.x - q.zeta) + cost.h(q.x - q.xi);
    double floor = 64.0 * eps * (n * max_abs(res.A) + lambda_cap * res.Phi);
    if (pd > 0.0) floor += 64.0 * eps * corner_scale / pd;
    res.est_error = quad_part + floor;
    res.converged =
        res.est_error <= opts.nonconv_rel_tol * (1.0 + n * max_abs(res.A) + lambda_cap * res.Phi);
    return res;
}

double monotone_pair_gap(const CostSpec& cost, const Quadruple& q) {
    if (!q.consistent()) throw std::invalid_argument("monotone_pair_gap: inconsistent dimensions");
    if (q.dim() != cost.dim())
        throw std::invalid_argument("monotone_pair_gap: cost/quadruple dim mismatch");
    if ((q.x.array() == q.y.array()).all() || (q.xi.array() == q.zeta.array()).all())
        return 0.0;
    // grouped so that nearby evaluations cancel before the cross terms mix
    return (cost.h(q.x - q.zeta) - cost.h(q.y - q.zeta)) +
           (cost.h(q.y - q.xi) - cost.h(q.x - q.xi));
}

double form_gap(const CostSpec& cost, const Quadruple& q, int quad_order, FormResult* out,
                const FormOptions& opts) {
    FormResult fr = form_matrix(cost, q, quad_order, opts);
    const double gap = (fr.A * (q.x - q.y)).dot(q.xi - q.zeta);
    if (out) *out = std::move(fr);
    return gap;
}

SandwichReport sandwich_check(const CostSpec& cost, const Quadruple& q, const Vec& v,
                              int quad_order, double tol, const FormOptions& opts) {
    if (v.size() != cost.dim()) throw std::invalid_argument("sandwich_check: bad direction size");
    if (v.norm() == 0.0) throw std::invalid_argument("sandwich_check: direction must be nonzero");
    SandwichReport rep;
    rep.form = form_matrix(cost, q, quad_order, opts);
    const EllipticityBounds& b = cost.bounds();
    const double v2 = v.squaredNorm();
    rep.lower = b.lambda * rep.form.Phi * v2;
    rep.upper = b.Lambda * rep.form.Phi * v2;
    rep.mid = v.dot(rep.form.A * v);
    rep.tol_used = tol + 3.0 * rep.form.est_error * v2;
    rep.lower_excess = std::max(0.0, rep.lower - rep.tol_used - rep.mid);
    rep.upper_excess = std::max(0.0, rep.mid - rep.upper - rep.tol_used);
    rep.pass = rep.lower_excess == 0.0 && rep.upper_excess == 0.0;
    return rep;
}

} // namespace hmt
