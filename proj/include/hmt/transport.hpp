#pragma once

#include <vector>

#include "hmt/cost.hpp"
#include "hmt/multimap.hpp"
#include "hmt/types.hpp"

namespace hmt {

/// An exact solution of the discrete Monge problem with uniform weights:
/// perm[i] is the target index assigned to source i.
struct Assignment {
    std::vector<Vec> sources;
    std::vector<Vec> targets;
    std::vector<std::size_t> perm;
    double total_cost = 0.0;
};

enum class AssignMode {
    automatic,  // exhaustive for m <= 9, shortest augmenting path otherwise
    exhaustive, // brute force over permutations (m <= 9); lexicographic tie-break
    hungarian   // O(m^3) potentials + shortest augmenting path
};

/// Minimum-total-cost bijection between equal-count point lists. Both
/// modes are exact optima; the exhaustive mode additionally guarantees the
/// lexicographically smallest optimal permutation and serves as the oracle
/// for the polynomial solver.
Assignment solve_assignment(const CostSpec& cost, const std::vector<Vec>& sources,
                            const std::vector<Vec>& targets,
                            AssignMode mode = AssignMode::automatic);

/// Dual potentials of the assignment optimum: phi on sources, phi_c on
/// targets, with phi[i] + phi_c[j] <= c(source_i, target_j) and equality
/// on matched pairs.
struct DualPotentials {
    Vec phi;
    Vec phi_c;
};
DualPotentials dual_potentials(const CostSpec& cost, const Assignment& a);

/// Single-valued map source_i -> {target_perm(i)}.
MultiMap as_multimap(const Assignment& a);

/// Contact multimap of the c-transform pair built from the assignment
/// optimum: each grid point maps to the argmin set of
/// c(x, m) - phi_c(m) over targets m, within tie_tol (default
/// 1e-9 * (1 + scale^p)). Tie points produce genuinely multivalued
/// entries; the output is c-cyclically monotone by construction.
MultiMap c_potential_multimap(const CostSpec& cost, const std::vector<Vec>& sources,
                              const std::vector<Vec>& targets, const std::vector<Vec>& grid,
                              double tie_tol = -1.0);

/// Same, reusing an already solved assignment.
MultiMap c_potential_multimap(const CostSpec& cost, const Assignment& a,
                              const std::vector<Vec>& grid, double tie_tol = -1.0);

} // namespace hmt
