#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "hmt/cost.hpp"
#include "hmt/types.hpp"

namespace hmt {

/// A finite set of pairs (x, y) claimed c-monotone:
/// c(x,y) + c(x',y') <= c(x,y') + c(x',y) for all pairs.
class MonotoneSet {
public:
    MonotoneSet(int dim, std::vector<std::pair<Vec, Vec>> pairs);
    /// Validating constructor: rejects sets violating c-monotonicity by
    /// more than tol.
    MonotoneSet(int dim, std::vector<std::pair<Vec, Vec>> pairs, const CostSpec& cost,
                double tol);

    int dim() const { return dim_; }
    const std::vector<std::pair<Vec, Vec>>& pairs() const { return pairs_; }
    std::size_t size() const { return pairs_.size(); }

private:
    int dim_;
    std::vector<std::pair<Vec, Vec>> pairs_;
};

enum class ChartFailure { singular_base, epsilon_too_large, lipschitz_violation, under_resolved };

class ChartError : public std::runtime_error {
public:
    ChartError(ChartFailure kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ChartFailure kind() const { return kind_; }

private:
    ChartFailure kind_;
};

/// A local Lipschitz parametrization of a c-monotone set near a base
/// pair: after the linear change of variables u = (A0 x + y)/sqrt(2),
/// v = (A0 x - y)/sqrt(2), the restricted set is the graph of a function
/// u -> v with certified constant
///   lip = sqrt((1 + eps * anorm_inv) / (1 - eps * anorm_inv)).
struct Chart {
    Vec base_x, base_y;
    Mat A0;              // D2h(x0-y0) = -d2c/dxdy at the base
    double anorm_inv = 0.0; // operator norm of A0^{-1}
    double epsilon = 0.0;   // certified sup of ||A0 - D2h(x-y)|| over the neighborhood
    double radius = 0.0;    // neighborhood radius in R^{2n}
    double lip = 0.0;
    std::vector<std::size_t> restricted;      // indices of pairs inside the neighborhood
    std::vector<std::pair<Vec, Vec>> graph;   // (u, v) images of the restricted pairs
};

/// d2 c / dx dy for c(x,y) = h(x-y): the matrix -D2h(x-y). Singular
/// exactly where D2h(x-y) is (for power costs with p > 2, on x = y).
Mat mixed_hessian(const CostSpec& cost, const Vec& x, const Vec& y);

/// u = (A0 x + y)/sqrt(2), v = (A0 x - y)/sqrt(2).
std::pair<Vec, Vec> cayley(const Mat& a0, const Vec& x, const Vec& y);

/// x = A0^{-1} (u+v)/sqrt(2), y = (u-v)/sqrt(2). Requires det A0 != 0.
std::pair<Vec, Vec> cayley_inverse(const Mat& a0, const Vec& u, const Vec& v);

/// Builds the chart at the given base pair with the given neighborhood
/// radius. epsilon is measured on a deterministic grid over the
/// difference ball {x - y} (the mixed Hessian depends on x - y only),
/// refined once and inflated by 10% as a safety margin; under-resolved
/// measurements (refinement moving the sup by more than 10%) are
/// rejected. Verifies on all restricted pairs both the bilinear estimate
///   A0 (x'-x) . (y-y') <= eps |x-x'| |y-y'|
/// and the Lipschitz bound |dv| <= lip |du|. Throws ChartError.
Chart build_chart(const CostSpec& cost, const MonotoneSet& s, std::size_t base_index,
                  double radius);

/// Halves the radius until eps * anorm_inv <= 0.5 (or radius < 1e-6,
/// which raises epsilon_too_large).
Chart build_chart_auto(const CostSpec& cost, const MonotoneSet& s, std::size_t base_index,
                       double initial_radius);

/// Splits by distance to the diagonal: pairs with |x-y| <= tol are
/// trivially parametrized by x -> (x,x) and are returned separately.
std::pair<MonotoneSet, MonotoneSet> split_diagonal(const MonotoneSet& s, double tol);

} // namespace hmt
