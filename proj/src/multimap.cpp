#include "hmt/multimap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "hmt/bilinear_form.hpp"
#include "hmt/sampling.hpp"

namespace hmt {

namespace {

bool lex_less(const Vec& a, const Vec& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return false;
}

bool exact_equal(const Vec& a, const Vec& b) {
    return a.size() == b.size() && (a.array() == b.array()).all();
}

} // namespace

std::size_t MultiMap::graph_size() const {
    std::size_t total = 0;
    for (const auto& e : entries_) total += e.values.size();
    return total;
}

void MultiMap::add(const Vec& x, const Vec& value) {
    if (dim_ == 0) dim_ = static_cast<int>(x.size());
    if (x.size() != dim_ || value.size() != dim_)
        throw std::invalid_argument("MultiMap::add: dimension mismatch");
    auto it = std::lower_bound(entries_.begin(), entries_.end(), x,
                               [](const MapEntry& e, const Vec& key) { return lex_less(e.x, key); });
    if (it == entries_.end() || !exact_equal(it->x, x))
        it = entries_.insert(it, MapEntry{x, {}});
    auto& vals = it->values;
    auto vit = std::lower_bound(vals.begin(), vals.end(), value,
                                [](const Vec& a, const Vec& b) { return lex_less(a, b); });
    if (vit == vals.end() || !exact_equal(*vit, value)) vals.insert(vit, value);
}

std::vector<std::pair<Vec, Vec>> MultiMap::graph() const {
    std::vector<std::pair<Vec, Vec>> g;
    g.reserve(graph_size());
    for (const auto& e : entries_)
        for (const auto& v : e.values) g.emplace_back(e.x, v);
    return g;
}

bool MultiMap::single_valued() const {
    for (const auto& e : entries_)
        if (e.values.size() != 1) return false;
    return true;
}

ViolationReport check_h_monotone(const CostSpec& cost, const MultiMap& t, double tol,
                                 std::size_t max_graph) {
    if (t.domain_size() == 0) throw std::invalid_argument("check_h_monotone: empty map");
    const auto g = t.graph();
    if (g.size() > max_graph)
        throw std::invalid_argument("check_h_monotone: graph exceeds the quadratic-cost guard; "
                                    "raise max_graph explicitly to proceed");
    ViolationReport rep;
    rep.kind = ViolationKind::pairwise;
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            const double gap =
                monotone_pair_gap(cost, Quadruple{g[i].first, g[j].first, g[i].second, g[j].second});
            ++rep.checked_count;
            if (gap < -tol) {
                rep.witnesses.push_back({{i, j}, {}, gap});
                rep.worst_gap = std::min(rep.worst_gap, gap);
            }
        }
    }
    return rep;
}

namespace {

// Total cost of assigning graph point k to the value of graph point sigma(k).
double cycle_gap(const CostSpec& cost, const std::vector<std::pair<Vec, Vec>>& g,
                 const std::vector<std::size_t>& subset, const std::vector<std::size_t>& sigma) {
    double permuted = 0.0, identity = 0.0;
    for (std::size_t k = 0; k < subset.size(); ++k) {
        identity += cost.pair_cost(g[subset[k]].first, g[subset[k]].second);
        permuted += cost.pair_cost(g[subset[k]].first, g[subset[sigma[k]]].second);
    }
    return permuted - identity;
}

// Number of size-N subsets, saturating.
double subset_count(std::size_t g, int n) {
    double c = 1.0;
    for (int k = 0; k < n; ++k) c *= static_cast<double>(g - k) / (k + 1);
    return c;
}

void check_subset_perms(const CostSpec& cost, const std::vector<std::pair<Vec, Vec>>& g,
                        const std::vector<std::size_t>& subset, double tol,
                        ViolationReport& rep) {
    std::vector<std::size_t> sigma(subset.size());
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
        const double gap = cycle_gap(cost, g, subset, sigma);
        ++rep.checked_count;
        if (gap < -tol) {
            rep.witnesses.push_back({subset, sigma, gap});
            rep.worst_gap = std::min(rep.worst_gap, gap);
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
}

} // namespace

ViolationReport check_cyclic(const CostSpec& cost, const MultiMap& t, int max_cycle, double tol,
                             std::uint64_t max_evals, std::uint64_t seed) {
    if (max_cycle < 2 || max_cycle > 8)
        throw std::invalid_argument("check_cyclic: max_cycle must be in [2, 8]");
    const auto g = t.graph();
    ViolationReport rep;
    rep.kind = ViolationKind::cyclic;
    if (g.size() < 2) return rep;

    double total_work = 0.0;
    std::vector<double> factorial(static_cast<std::size_t>(max_cycle) + 1, 1.0);
    for (int k = 2; k <= max_cycle; ++k) factorial[k] = factorial[k - 1] * k;
    for (int n = 2; n <= std::min<int>(max_cycle, static_cast<int>(g.size())); ++n)
        total_work += subset_count(g.size(), n) * factorial[n];

    Rng rng(seed);
    std::uint64_t budget = max_evals;
    for (int n = 2; n <= std::min<int>(max_cycle, static_cast<int>(g.size())); ++n) {
        const double exhaustive_cost = subset_count(g.size(), n) * factorial[n];
        if (exhaustive_cost <= static_cast<double>(budget)) {
            // enumerate all subsets of size n
            std::vector<std::size_t> subset(n);
            std::iota(subset.begin(), subset.end(), 0);
            while (true) {
                check_subset_perms(cost, g, subset, tol, rep);
                int k = n - 1;
                while (k >= 0 && subset[k] == g.size() - n + k) --k;
                if (k < 0) break;
                ++subset[k];
                for (int j = k + 1; j < n; ++j) subset[j] = subset[j - 1] + 1;
            }
            budget -= static_cast<std::uint64_t>(exhaustive_cost);
        } else {
            const std::uint64_t draws = budget / static_cast<std::uint64_t>(factorial[n]);
            for (std::uint64_t it = 0; it < draws; ++it) {
                // uniform random subset of size n (partial Fisher-Yates on indices)
                std::vector<std::size_t> pool(g.size());
                std::iota(pool.begin(), pool.end(), 0);
                std::vector<std::size_t> subset(n);
                for (int k = 0; k < n; ++k) {
                    const std::uint64_t pick = k + rng.below(pool.size() - k);
                    std::swap(pool[k], pool[pick]);
                    subset[k] = pool[k];
                }
                std::sort(subset.begin(), subset.end());
                check_subset_perms(cost, g, subset, tol, rep);
            }
            budget = 0;
        }
        if (budget == 0) break;
    }
    rep.coverage = total_work > 0.0 ? std::min(1.0, static_cast<double>(rep.checked_count) / total_work)
                                    : 1.0;
    return rep;
}

MultiMap invert(const MultiMap& t) {
    MultiMap inv(t.dim());
    for (const auto& [x, xi] : t.graph()) inv.add(xi, x);
    return inv;
}

ViolationReport check_inverse_monotone(const CostSpec& cost, const MultiMap& t, double tol,
                                       std::size_t max_graph) {
    if (!cost.is_even())
        throw std::invalid_argument(
            "check_inverse_monotone: the cost is not even (h(-x) != h(x)); inversion does not "
            "preserve h-monotonicity for such costs");
    return check_h_monotone(cost, invert(t), tol, max_graph);
}

double maximality_gap(const CostSpec& cost, const MultiMap& t, const Vec& x, const Vec& xi) {
    if (t.domain_size() == 0) throw std::invalid_argument("maximality_gap: empty map");
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& [y, zeta] : t.graph()) {
        const double gap = cost.h(x - zeta) + cost.h(y - xi) - cost.h(x - xi) - cost.h(y - zeta);
        lo = std::min(lo, gap);
    }
    return lo;
}

std::vector<std::pair<double, double>> continuity_profile(const MultiMap& t,
                                                          const std::vector<double>& radius_grid) {
    if (!t.single_valued())
        throw std::invalid_argument("continuity_profile: map must be single-valued");
    const auto& entries = t.entries();
    std::vector<std::pair<double, double>> dist_osc; // (|x-x'|, |T(x)-T(x')|)
    dist_osc.reserve(entries.size() * (entries.size() - 1) / 2);
    for (std::size_t i = 0; i < entries.size(); ++i)
        for (std::size_t j = i + 1; j < entries.size(); ++j)
            dist_osc.emplace_back((entries[i].x - entries[j].x).norm(),
                                  (entries[i].values[0] - entries[j].values[0]).norm());
    std::sort(dist_osc.begin(), dist_osc.end());

    std::vector<double> radii = radius_grid;
    std::sort(radii.begin(), radii.end());
    std::vector<std::pair<double, double>> profile;
    profile.reserve(radii.size());
    double running = 0.0;
    std::size_t k = 0;
    for (double r : radii) {
        while (k < dist_osc.size() && dist_osc[k].first <= r)
            running = std::max(running, dist_osc[k++].second);
        profile.emplace_back(r, running);
    }
    return profile;
}

double default_check_tol(const CostSpec& cost, const MultiMap& t) {
    double scale = 0.0;
    for (const auto& e : t.entries()) {
        scale = std::max(scale, e.x.cwiseAbs().maxCoeff());
        for (const auto& v : e.values) scale = std::max(scale, v.cwiseAbs().maxCoeff());
    }
    return 1e-9 * (1.0 + std::pow(scale, cost.degree()));
}

} // namespace hmt
