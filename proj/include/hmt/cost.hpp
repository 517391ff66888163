#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hmt/types.hpp"

namespace hmt {

enum class CostKind { power, anisotropic, custom };

/// How a pair of ellipticity constants was obtained.
enum class BoundsMethod { closed_form, sphere_sampling };

/// Certified two-sided bounds for <D2h(x)v, v> over unit x and unit v.
struct EllipticityBounds {
    double lambda = 0.0;   // lower bound, > 0
    double Lambda = 0.0;   // upper bound, >= lambda
    BoundsMethod method = BoundsMethod::closed_form;
    int sample_count = 0;
    double margin = 0.0;   // deflation/inflation applied to sampled extremes

    double ratio() const { return Lambda / lambda; }
};

/// A translation-invariant transport cost c(x,y) = h(x-y), with h
/// nonnegative, positively homogeneous of degree p >= 2 and with a
/// positive definite Hessian on the unit sphere. Immutable after
/// construction; evaluators are pure and safe to call concurrently.
class CostSpec {
public:
    int dim() const { return dim_; }
    double degree() const { return degree_; }
    CostKind kind() const { return kind_; }
    const Mat& matrix() const { return matrix_; } // anisotropic only

    double h(const Vec& x) const { return h_(x); }
    Vec grad(const Vec& x) const { return grad_(x); }
    Mat hessian(const Vec& x) const { return hess_(x); }

    /// c(x,y) = h(x-y).
    double pair_cost(const Vec& x, const Vec& y) const { return h_(x - y); }

    /// Certified ellipticity constants; closed form for the power family,
    /// deterministic sphere sampling otherwise. Cached after first use.
    const EllipticityBounds& bounds() const;

    /// True when h(-x) = h(x); exact for the built-in families, sampled
    /// for custom costs.
    bool is_even(int trials = 64) const;

    friend CostSpec make_power_cost(int dim, double p);
    friend CostSpec make_anisotropic_cost(int dim, double p, const Mat& m);
    friend CostSpec make_custom_cost(int dim, double p,
                                     std::function<double(const Vec&)> h,
                                     std::function<Vec(const Vec&)> grad,
                                     std::function<Mat(const Vec&)> hess);

private:
    CostSpec() = default;

    int dim_ = 0;
    double degree_ = 0.0;
    CostKind kind_ = CostKind::custom;
    Mat matrix_;
    std::function<double(const Vec&)> h_;
    std::function<Vec(const Vec&)> grad_;
    std::function<Mat(const Vec&)> hess_;
    struct BoundsCache;
    std::shared_ptr<BoundsCache> cache_;
};

/// h(x) = |x|^p. Rejects dim < 1 and p < 2.
CostSpec make_power_cost(int dim, double p);

/// h(x) = <Mx, x>^(p/2) with M symmetric positive definite.
CostSpec make_anisotropic_cost(int dim, double p, const Mat& m);

/// User-supplied C^2 cost; the evaluators are trusted, validation is the
/// caller's job (see check_homogeneity).
CostSpec make_custom_cost(int dim, double p,
                          std::function<double(const Vec&)> h,
                          std::function<Vec(const Vec&)> grad,
                          std::function<Mat(const Vec&)> hess);

/// Ellipticity constants for an arbitrary cost: closed form where known,
/// otherwise min/max eigenvalues of D2h over deterministic sphere
/// directions (low-discrepancy points plus the coordinate axes), deflated
/// and inflated by margin. Throws if a sampled Hessian has a non-positive
/// eigenvalue.
EllipticityBounds ellipticity_bounds(const CostSpec& cost, int sample_count,
                                     double margin = 1e-3);

struct HomogeneitySample {
    Vec x;
    double t = 0.0;
    double value_defect = 0.0;    // |h(tx) - t^p h(x)| / (1 + t^p h(x))
    double hessian_defect = 0.0;  // same relation for D2h at degree p-2
};

/// Sampling report for the standing hypotheses: positive homogeneity of h
/// and degree p-2 homogeneity of D2h. Never throws on violations.
struct HomogeneityReport {
    bool ok = true;
    int trials = 0;
    double tol = 0.0;
    double worst_value_defect = 0.0;
    double worst_hessian_defect = 0.0;
    std::vector<HomogeneitySample> violations;
};

HomogeneityReport check_homogeneity(const CostSpec& cost, int trials, double tol,
                                    std::uint64_t seed = 1);

} // namespace hmt
