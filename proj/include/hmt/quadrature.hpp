#pragma once

#include <vector>

namespace hmt {

/// Gauss-Legendre rule on (0,1); nodes are interior, so integrands that
/// blow up only at the interval ends are never evaluated there.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights; // sum to 1
};

/// Nodes/weights for the given point count (Newton on the Legendre
/// polynomial, then affine shift from (-1,1) to (0,1)).
GaussRule gauss_legendre_unit(int points);

} // namespace hmt
