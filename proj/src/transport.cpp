#include "hmt/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hmt {

namespace {

constexpr std::size_t kExhaustiveCap = 9;
constexpr std::size_t kSizeCap = 512;

Mat cost_matrix(const CostSpec& cost, const std::vector<Vec>& s, const std::vector<Vec>& t) {
    Mat c(s.size(), t.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < t.size(); ++j)
            c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                cost.pair_cost(s[i], t[j]);
    return c;
}

std::vector<std::size_t> solve_exhaustive(const Mat& c, double& best_cost) {
    const std::size_t m = static_cast<std::size_t>(c.rows());
    std::vector<std::size_t> perm(m), best(m);
    std::iota(perm.begin(), perm.end(), 0);
    best = perm;
    best_cost = std::numeric_limits<double>::infinity();
    // lexicographic enumeration; strict improvement keeps the lex-smallest
    // optimal permutation
    do {
        double total = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            total += c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(perm[i]));
        if (total < best_cost) {
            best_cost = total;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// O(m^3) shortest augmenting path with potentials (Hungarian method).
// Returns the matched column per row; u/v are the dual potentials with
// u_i + v_j <= c_ij and equality on matched pairs.
std::vector<std::size_t> solve_hungarian(const Mat& c, Vec& u_out, Vec& v_out) {
    const int m = static_cast<int>(c.rows());
    std::vector<double> u(m + 1, 0.0), v(m + 1, 0.0);
    std::vector<int> match(m + 1, 0); // match[col 1..m] = row, 1-based
    for (int i = 1; i <= m; ++i) {
        std::vector<double> minv(m + 1, std::numeric_limits<double>::infinity());
        std::vector<int> way(m + 1, 0);
        std::vector<char> used(m + 1, 0);
        int j0 = 0;
        match[0] = i;
        do {
            used[j0] = 1;
            const int i0 = match[j0];
            double delta = std::numeric_limits<double>::infinity();
            int j1 = 0;
            for (int j = 1; j <= m; ++j) {
                if (used[j]) continue;
                const double cur = c(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= m; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const int j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<std::size_t> perm(m);
    for (int j = 1; j <= m; ++j) perm[static_cast<std::size_t>(match[j] - 1)] = j - 1;
    u_out.resize(m);
    v_out.resize(m);
    for (int i = 1; i <= m; ++i) u_out[i - 1] = u[i];
    for (int j = 1; j <= m; ++j) v_out[j - 1] = v[j];
    return perm;
}

double coordinate_scale(const std::vector<Vec>& pts) {
    double s = 0.0;
    for (const Vec& p : pts) s = std::max(s, p.cwiseAbs().maxCoeff());
    return s;
}

} // namespace

Assignment solve_assignment(const CostSpec& cost, const std::vector<Vec>& sources,
                            const std::vector<Vec>& targets, AssignMode mode) {
    if (sources.size() != targets.size())
        throw std::invalid_argument("solve_assignment: source/target counts differ");
    if (sources.empty()) throw std::invalid_argument("solve_assignment: empty instance");
    if (sources.size() > kSizeCap)
        throw std::invalid_argument("solve_assignment: instance exceeds the size cap (512)");
    for (const Vec& p : sources)
        if (p.size() != cost.dim()) throw std::invalid_argument("solve_assignment: bad source dim");
    for (const Vec& p : targets)
        if (p.size() != cost.dim()) throw std::invalid_argument("solve_assignment: bad target dim");

    if (mode == AssignMode::automatic)
        mode = sources.size() <= kExhaustiveCap ? AssignMode::exhaustive : AssignMode::hungarian;
    if (mode == AssignMode::exhaustive && sources.size() > kExhaustiveCap)
        throw std::invalid_argument("solve_assignment: exhaustive mode capped at m <= 9");

    const Mat c = cost_matrix(cost, sources, targets);
    Assignment a;
    a.sources = sources;
    a.targets = targets;
    if (mode == AssignMode::exhaustive) {
        a.perm = solve_exhaustive(c, a.total_cost);
    } else {
        Vec u, v;
        a.perm = solve_hungarian(c, u, v);
        a.total_cost = 0.0;
        for (std::size_t i = 0; i < a.perm.size(); ++i)
            a.total_cost += c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a.perm[i]));
    }
    return a;
}

DualPotentials dual_potentials(const CostSpec& cost, const Assignment& a) {
    const Mat c = cost_matrix(cost, a.sources, a.targets);
    Vec u, v;
    solve_hungarian(c, u, v);
    return {u, v};
}

MultiMap as_multimap(const Assignment& a) {
    MultiMap m(static_cast<int>(a.sources.front().size()));
    for (std::size_t i = 0; i < a.sources.size(); ++i) m.add(a.sources[i], a.targets[a.perm[i]]);
    return m;
}

MultiMap c_potential_multimap(const CostSpec& cost, const std::vector<Vec>& sources,
                              const std::vector<Vec>& targets, const std::vector<Vec>& grid,
                              double tie_tol) {
    const Assignment a = solve_assignment(cost, sources, targets);
    return c_potential_multimap(cost, a, grid, tie_tol);
}

MultiMap c_potential_multimap(const CostSpec& cost, const Assignment& a,
                              const std::vector<Vec>& grid, double tie_tol) {
    const DualPotentials duals = dual_potentials(cost, a);
    if (tie_tol < 0.0) {
        double scale = std::max(coordinate_scale(a.targets), coordinate_scale(grid));
        tie_tol = 1e-9 * (1.0 + std::pow(scale, cost.degree()));
    }
    MultiMap m(cost.dim());
    for (const Vec& x : grid) {
        double lo = std::numeric_limits<double>::infinity();
        std::vector<double> reduced(a.targets.size());
        for (std::size_t j = 0; j < a.targets.size(); ++j) {
            reduced[j] = cost.pair_cost(x, a.targets[j]) - duals.phi_c[static_cast<Eigen::Index>(j)];
            lo = std::min(lo, reduced[j]);
        }
        for (std::size_t j = 0; j < a.targets.size(); ++j)
            if (reduced[j] <= lo + tie_tol) m.add(x, a.targets[j]);
    }
    return m;
}

} // namespace hmt
