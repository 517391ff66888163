#pragma once

#include "hmt/types.hpp"

namespace hmt {

/// Angle between two nonzero vectors, in [0, pi]. Uses the half-angle
/// formula, which stays accurate near 0 and pi where acos of the
/// normalized dot product loses digits.
double angle_between(const Vec& u, const Vec& v);

/// Symmetric positive semi-definite square root via eigendecomposition.
/// Eigenvalues below floor_rel * max_eigenvalue are clamped to the floor.
Mat spd_sqrt(const Mat& a, double floor_rel = 1e-14);

/// Largest singular value.
double operator_norm(const Mat& a);

/// Extreme eigenvalues of a symmetric matrix.
struct EigRange {
    double min;
    double max;
};
EigRange symmetric_eig_range(const Mat& a);

/// Max-norm of a matrix (largest absolute entry).
double max_abs(const Mat& a);

} // namespace hmt
