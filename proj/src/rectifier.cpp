#include "hmt/rectifier.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "hmt/linalg.hpp"
#include "hmt/sampling.hpp"

namespace hmt {

MonotoneSet::MonotoneSet(int dim, std::vector<std::pair<Vec, Vec>> pairs)
    : dim_(dim), pairs_(std::move(pairs)) {
    for (const auto& [x, y] : pairs_)
        if (x.size() != dim_ || y.size() != dim_)
            throw std::invalid_argument("MonotoneSet: dimension mismatch");
}

MonotoneSet::MonotoneSet(int dim, std::vector<std::pair<Vec, Vec>> pairs, const CostSpec& cost,
                         double tol)
    : MonotoneSet(dim, std::move(pairs)) {
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
        for (std::size_t j = i + 1; j < pairs_.size(); ++j) {
            const auto& [x, y] = pairs_[i];
            const auto& [xp, yp] = pairs_[j];
            const double gap = cost.h(x - yp) + cost.h(xp - y) - cost.h(x - y) - cost.h(xp - yp);
            if (gap < -tol) {
                std::ostringstream os;
                os << "MonotoneSet: pairs " << i << " and " << j
                   << " violate c-monotonicity (gap " << gap << ")";
                throw std::invalid_argument(os.str());
            }
        }
    }
}

Mat mixed_hessian(const CostSpec& cost, const Vec& x, const Vec& y) {
    return -cost.hessian(x - y);
}

std::pair<Vec, Vec> cayley(const Mat& a0, const Vec& x, const Vec& y) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Vec ax = a0 * x;
    return {inv_sqrt2 * (ax + y), inv_sqrt2 * (ax - y)};
}

std::pair<Vec, Vec> cayley_inverse(const Mat& a0, const Vec& u, const Vec& v) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Eigen::FullPivLU<Mat> lu(a0);
    if (!lu.isInvertible())
        throw std::invalid_argument("cayley_inverse: singular matrix");
    return {lu.solve(inv_sqrt2 * (u + v)), inv_sqrt2 * (u - v)};
}

namespace {

// Max of ||A0 - D2h(w)|| over a grid of the ball |w - w0| <= span. The
// 17^n product grid is exact enough for n <= 3; larger dimensions fall
// back to deterministic low-discrepancy samples.
double epsilon_on_grid(const CostSpec& cost, const Mat& a0, const Vec& w0, double span,
                       int per_axis) {
    const int n = static_cast<int>(w0.size());
    double worst = 0.0;
    double total_points = std::pow(static_cast<double>(per_axis), n);
    if (total_points <= 120000.0) {
        std::vector<int> idx(n, 0);
        while (true) {
            Vec w = w0;
            for (int d = 0; d < n; ++d)
                w[d] += span * (2.0 * idx[d] / (per_axis - 1) - 1.0);
            if ((w - w0).norm() <= span)
                worst = std::max(worst, operator_norm(a0 - cost.hessian(w)));
            int d = 0;
            while (d < n && ++idx[d] == per_axis) idx[d++] = 0;
            if (d == n) break;
        }
    } else {
        for (const Vec& w : ball_points(w0, span, 100000))
            worst = std::max(worst, operator_norm(a0 - cost.hessian(w)));
    }
    return worst;
}

} // namespace

Chart build_chart(const CostSpec& cost, const MonotoneSet& s, std::size_t base_index,
                  double radius) {
    if (base_index >= s.size()) throw std::invalid_argument("build_chart: base index out of range");
    if (radius <= 0.0) throw std::invalid_argument("build_chart: radius must be positive");

    Chart chart;
    const auto& [x0, y0] = s.pairs()[base_index];
    chart.base_x = x0;
    chart.base_y = y0;
    chart.radius = radius;
    chart.A0 = cost.hessian(x0 - y0); // equals -d2c/dxdy at the base

    const EigRange er = symmetric_eig_range(chart.A0);
    const double min_abs_eig = std::min(std::abs(er.min), std::abs(er.max));
    if (er.min <= 0.0 || min_abs_eig <= 1e-12 * std::abs(er.max))
        throw ChartError(ChartFailure::singular_base,
                         "build_chart: mixed Hessian is singular at the base pair "
                         "(for homogeneous costs with p > 2 this means x0 = y0)");
    chart.anorm_inv = 1.0 / er.min;

    // The mixed Hessian depends on w = x - y alone, and the image of the
    // R^{2n} ball of radius r under (x,y) -> x-y is the ball of radius
    // sqrt(2) r around w0.
    const Vec w0 = x0 - y0;
    const double span = std::sqrt(2.0) * radius;
    const double eps_coarse = epsilon_on_grid(cost, chart.A0, w0, span, 17);
    const double eps_fine = epsilon_on_grid(cost, chart.A0, w0, span, 33);
    if (eps_fine > 1.1 * eps_coarse + 1e-14 * max_abs(chart.A0))
        throw ChartError(ChartFailure::under_resolved,
                         "build_chart: refined epsilon grid moved the measured sup by more "
                         "than 10%; the neighborhood is under-resolved");

    // restrict to the R^{2n} ball and fold the data's own differences into
    // the measurement before the safety inflation
    double eps_data = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto& [x, y] = s.pairs()[i];
        const double dist =
            std::sqrt((x - x0).squaredNorm() + (y - y0).squaredNorm());
        if (dist <= radius) chart.restricted.push_back(i);
    }
    for (std::size_t i : chart.restricted)
        for (std::size_t j : chart.restricted) {
            const Vec w = s.pairs()[i].first - s.pairs()[j].second;
            if ((w - w0).norm() <= span)
                eps_data = std::max(eps_data, operator_norm(chart.A0 - cost.hessian(w)));
        }
    chart.epsilon = 1.10 * std::max({eps_coarse, eps_fine, eps_data});

    const double contraction = chart.epsilon * chart.anorm_inv;
    if (contraction >= 1.0)
        throw ChartError(ChartFailure::epsilon_too_large,
                         "build_chart: eps * ||A0^-1|| >= 1; shrink the radius");
    chart.lip = std::sqrt((1.0 + contraction) / (1.0 - contraction));

    for (std::size_t i : chart.restricted) {
        const auto& [x, y] = s.pairs()[i];
        chart.graph.push_back(cayley(chart.A0, x, y));
    }

    // certify the bilinear estimate and the Lipschitz bound on the data
    for (std::size_t a = 0; a < chart.restricted.size(); ++a) {
        for (std::size_t b = a + 1; b < chart.restricted.size(); ++b) {
            const auto& [x, y] = s.pairs()[chart.restricted[a]];
            const auto& [xp, yp] = s.pairs()[chart.restricted[b]];
            const double lhs = (chart.A0 * (xp - x)).dot(y - yp);
            const double rhs = chart.epsilon * (x - xp).norm() * (y - yp).norm();
            const double du = (chart.graph[a].first - chart.graph[b].first).norm();
            const double dv = (chart.graph[a].second - chart.graph[b].second).norm();
            const bool bilinear_ok = lhs <= rhs + 1e-9;
            const bool lipschitz_ok = (du < 1e-12) ? (dv < 1e-9) : (dv <= chart.lip * du + 1e-9);
            if (!bilinear_ok || !lipschitz_ok) {
                std::ostringstream os;
                os << "build_chart: restricted pairs " << chart.restricted[a] << " and "
                   << chart.restricted[b] << " violate the "
                   << (bilinear_ok ? "Lipschitz bound" : "bilinear estimate")
                   << " (the input is not c-monotone on this neighborhood)";
                throw ChartError(ChartFailure::lipschitz_violation, os.str());
            }
        }
    }
    return chart;
}

Chart build_chart_auto(const CostSpec& cost, const MonotoneSet& s, std::size_t base_index,
                       double initial_radius) {
    double radius = initial_radius;
    while (radius >= 1e-6) {
        try {
            Chart c = build_chart(cost, s, base_index, radius);
            if (c.epsilon * c.anorm_inv <= 0.5) return c;
        } catch (const ChartError& e) {
            if (e.kind() != ChartFailure::epsilon_too_large &&
                e.kind() != ChartFailure::under_resolved)
                throw;
        }
        radius *= 0.5;
    }
    throw ChartError(ChartFailure::epsilon_too_large,
                     "build_chart_auto: no admissible radius above 1e-6");
}

std::pair<MonotoneSet, MonotoneSet> split_diagonal(const MonotoneSet& s, double tol) {
    if (tol < 0.0) throw std::invalid_argument("split_diagonal: tol must be nonnegative");
    std::vector<std::pair<Vec, Vec>> off, diag;
    for (const auto& pr : s.pairs()) {
        if ((pr.first - pr.second).norm() <= tol)
            diag.push_back(pr);
        else
            off.push_back(pr);
    }
    return {MonotoneSet(s.dim(), std::move(off)), MonotoneSet(s.dim(), std::move(diag))};
}

} // namespace hmt
