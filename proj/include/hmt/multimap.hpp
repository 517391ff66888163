#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hmt/cost.hpp"
#include "hmt/types.hpp"

namespace hmt {

/// One domain point with its finite, non-empty value set.
struct MapEntry {
    Vec x;
    std::vector<Vec> values; // deduplicated, lexicographically sorted
};

/// A finite multivalued map: the computational stand-in for T. Domain
/// points are deduplicated by exact equality (tolerance-based merging can
/// silently create multivaluedness, so none is applied); repeated points
/// accumulate values. Immutable once built; all checks are read-only.
class MultiMap {
public:
    MultiMap() = default;
    explicit MultiMap(int dim) : dim_(dim) {}

    int dim() const { return dim_; }
    const std::vector<MapEntry>& entries() const { return entries_; }
    std::size_t domain_size() const { return entries_.size(); }
    std::size_t graph_size() const;

    void add(const Vec& x, const Vec& value);

    /// Flattened graph (x, xi) pairs in deterministic order.
    std::vector<std::pair<Vec, Vec>> graph() const;

    bool single_valued() const;

private:
    int dim_ = 0;
    std::vector<MapEntry> entries_; // sorted by x, lexicographically
};

enum class ViolationKind { pairwise, cyclic, maximality };

/// One offending configuration: graph indices (into MultiMap::graph()),
/// the permutation applied for cyclic checks, and the signed gap.
struct Witness {
    std::vector<std::size_t> graph_indices;
    std::vector<std::size_t> permutation; // empty for pairwise witnesses
    double gap = 0.0;
};

struct ViolationReport {
    ViolationKind kind = ViolationKind::pairwise;
    std::vector<Witness> witnesses;
    double worst_gap = 0.0;       // min gap over witnesses; 0 if none
    std::uint64_t checked_count = 0;
    double coverage = 1.0;        // checked / total when sampling caps apply

    bool ok() const { return witnesses.empty(); }
};

/// Exhaustive pairwise h-monotonicity over all unordered graph pairs
/// (including shared domain points); gaps below -tol are recorded.
/// Quadratic in the graph size, guarded by max_graph.
ViolationReport check_h_monotone(const CostSpec& cost, const MultiMap& t, double tol,
                                 std::size_t max_graph = 10000);

/// Cyclical monotonicity over all subsets of size N <= max_cycle and all
/// permutations, capped at max_evals permutation evaluations (uniform
/// seeded subset sampling beyond the cap; coverage is reported).
ViolationReport check_cyclic(const CostSpec& cost, const MultiMap& t, int max_cycle,
                             double tol, std::uint64_t max_evals = 1000000,
                             std::uint64_t seed = 1);

/// Graph transposition: dom(invert(T)) = ran(T).
MultiMap invert(const MultiMap& t);

/// check_h_monotone on the inverse; requires an even cost (h(-x) = h(x)),
/// rejected otherwise.
ViolationReport check_inverse_monotone(const CostSpec& cost, const MultiMap& t, double tol,
                                       std::size_t max_graph = 10000);

/// Minimum over (y, zeta) in graph(T) of
///   h(x-zeta) + h(y-xi) - h(x-xi) - h(y-zeta)
/// for the candidate pair (x, xi). The candidate extends T h-monotonically
/// (restricted to the finite dom(T)) iff the result is >= -tol.
double maximality_gap(const CostSpec& cost, const MultiMap& t, const Vec& x, const Vec& xi);

/// Oscillation profile of a single-valued map: for each radius r, the
/// largest |T(x)-T(x')| over domain pairs with |x-x'| <= r. Non-decreasing
/// in r by construction. Rejects multivalued input.
std::vector<std::pair<double, double>> continuity_profile(const MultiMap& t,
                                                          const std::vector<double>& radius_grid);

/// Default check tolerance: gaps of a degree-p cost scale like scale^p.
double default_check_tol(const CostSpec& cost, const MultiMap& t);

} // namespace hmt
