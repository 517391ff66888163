#include "hmt/cost.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <mutex>
#include <optional>
#include <stdexcept>

#include "hmt/linalg.hpp"
#include "hmt/sampling.hpp"

namespace hmt {

struct CostSpec::BoundsCache {
    std::once_flag once;
    std::optional<EllipticityBounds> bounds;
};

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// D2h for h = |x|^p, written so that no infinite coefficient can appear:
// p |x|^(p-2) (I + (p-2) xhat xhat^T), and the limit value at x = 0.
Mat power_hessian(double p, const Vec& x) {
    const int n = static_cast<int>(x.size());
    const double r = x.norm();
    if (r == 0.0) {
        if (p == 2.0) return 2.0 * Mat::Identity(n, n);
        return Mat::Zero(n, n);
    }
    const Vec xhat = x / r;
    const double scale = p * std::pow(r, p - 2.0);
    // the outer product is materialized unscaled so the result stays
    // symmetric to the last bit
    const Mat outer = xhat * xhat.transpose();
    Mat m = Mat::Identity(n, n);
    m += (p - 2.0) * outer;
    return scale * m;
}

Vec power_grad(double p, const Vec& x) {
    const double r = x.norm();
    if (r == 0.0) return Vec::Zero(x.size());
    return (p * std::pow(r, p - 2.0)) * x;
}

} // namespace

CostSpec make_power_cost(int dim, double p) {
    require(dim >= 1, "make_power_cost: dim must be >= 1");
    require(p >= 2.0, "make_power_cost: degree must be >= 2");
    CostSpec c;
    c.dim_ = dim;
    c.degree_ = p;
    c.kind_ = CostKind::power;
    c.h_ = [p](const Vec& x) { return std::pow(x.norm(), p); };
    c.grad_ = [p](const Vec& x) { return power_grad(p, x); };
    c.hess_ = [p](const Vec& x) { return power_hessian(p, x); };
    c.cache_ = std::make_shared<CostSpec::BoundsCache>();
    return c;
}

CostSpec make_anisotropic_cost(int dim, double p, const Mat& m) {
    require(dim >= 1, "make_anisotropic_cost: dim must be >= 1");
    require(p >= 2.0, "make_anisotropic_cost: degree must be >= 2");
    require(m.rows() == dim && m.cols() == dim, "make_anisotropic_cost: matrix shape mismatch");
    require(max_abs(m - m.transpose()) == 0.0, "make_anisotropic_cost: matrix must be symmetric");
    const EigRange er = symmetric_eig_range(m);
    require(er.min > 0.0, "make_anisotropic_cost: matrix must be positive definite");

    CostSpec c;
    c.dim_ = dim;
    c.degree_ = p;
    c.kind_ = CostKind::anisotropic;
    c.matrix_ = m;
    // h = q^(p/2) with q = <Mx,x>; Dh = p q^(p/2-1) Mx;
    // D2h = p q^(p/2-1) M + p(p-2) q^(p/2-2) (Mx)(Mx)^T.
    c.h_ = [m, p](const Vec& x) {
        const double q = x.dot(m * x);
        return std::pow(q, 0.5 * p);
    };
    c.grad_ = [m, p](const Vec& x) -> Vec {
        const double q = x.dot(m * x);
        if (q == 0.0) return Vec::Zero(x.size());
        return (p * std::pow(q, 0.5 * p - 1.0)) * (m * x);
    };
    c.hess_ = [m, p, dim](const Vec& x) -> Mat {
        const double q = x.dot(m * x);
        if (q == 0.0) {
            if (p == 2.0) return 2.0 * m;
            return Mat::Zero(dim, dim);
        }
        const Vec mx = m * x;
        const Vec u = mx / std::sqrt(q); // q^(1/2)-normalized so powers stay finite
        const Mat outer = u * u.transpose();
        Mat out = std::pow(q, 0.5 * p - 1.0) * (p * m);
        out += (p * (p - 2.0) * std::pow(q, 0.5 * p - 1.0)) * outer;
        return out;
    };
    c.cache_ = std::make_shared<CostSpec::BoundsCache>();
    return c;
}

CostSpec make_custom_cost(int dim, double p,
                          std::function<double(const Vec&)> h,
                          std::function<Vec(const Vec&)> grad,
                          std::function<Mat(const Vec&)> hess) {
    require(dim >= 1, "make_custom_cost: dim must be >= 1");
    require(p >= 2.0, "make_custom_cost: degree must be >= 2");
    require(static_cast<bool>(h) && static_cast<bool>(grad) && static_cast<bool>(hess),
            "make_custom_cost: all three evaluators are required");
    CostSpec c;
    c.dim_ = dim;
    c.degree_ = p;
    c.kind_ = CostKind::custom;
    c.h_ = std::move(h);
    c.grad_ = std::move(grad);
    c.hess_ = std::move(hess);
    c.cache_ = std::make_shared<CostSpec::BoundsCache>();
    return c;
}

EllipticityBounds ellipticity_bounds(const CostSpec& cost, int sample_count, double margin) {
    require(sample_count >= 1, "ellipticity_bounds: sample_count must be >= 1");
    require(margin >= 0.0 && margin < 1.0, "ellipticity_bounds: margin must be in [0,1)");

    if (cost.kind() == CostKind::power) {
        const double p = cost.degree();
        EllipticityBounds b;
        b.method = BoundsMethod::closed_form;
        if (cost.dim() == 1) {
            // S^0 = {-1, +1} and D2h there is the scalar p(p-1)
            b.lambda = b.Lambda = p * (p - 1.0);
        } else {
            b.lambda = p;
            b.Lambda = p * (p - 1.0);
        }
        return b;
    }
    if (cost.kind() == CostKind::anisotropic && cost.degree() == 2.0) {
        const EigRange er = symmetric_eig_range(2.0 * cost.matrix());
        return {er.min, er.max, BoundsMethod::closed_form, 0, 0.0};
    }

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    const auto dirs = sphere_points(cost.dim(), sample_count);
    for (const Vec& x : dirs) {
        const EigRange er = symmetric_eig_range(cost.hessian(x));
        if (er.min <= 0.0)
            throw std::domain_error(
                "ellipticity_bounds: sampled Hessian has a non-positive eigenvalue; "
                "the cost violates the standing positivity assumption");
        lo = std::min(lo, er.min);
        hi = std::max(hi, er.max);
    }
    EllipticityBounds b;
    b.lambda = lo * (1.0 - margin);
    b.Lambda = hi * (1.0 + margin);
    b.method = BoundsMethod::sphere_sampling;
    b.sample_count = static_cast<int>(dirs.size());
    b.margin = margin;
    return b;
}

const EllipticityBounds& CostSpec::bounds() const {
    std::call_once(cache_->once, [this] {
        cache_->bounds = ellipticity_bounds(*this, 512, 1e-3);
    });
    return *cache_->bounds;
}

bool CostSpec::is_even(int trials) const {
    if (kind_ != CostKind::custom) return true;
    Rng rng(0xe11e);
    for (int i = 0; i < trials; ++i) {
        const Vec x = rng.unit_vector(dim_) * rng.uniform(0.25, 2.0);
        const double a = h_(x);
        const double b = h_(-x);
        if (std::abs(a - b) > 1e-10 * (1.0 + std::abs(a))) return false;
    }
    return true;
}

HomogeneityReport check_homogeneity(const CostSpec& cost, int trials, double tol,
                                    std::uint64_t seed) {
    require(trials >= 1, "check_homogeneity: trials must be >= 1");
    HomogeneityReport rep;
    rep.trials = trials;
    rep.tol = tol;
    Rng rng(seed);
    const double p = cost.degree();
    for (int i = 0; i < trials; ++i) {
        const Vec x = rng.unit_vector(cost.dim()) * rng.uniform(0.5, 2.0);
        const double t = rng.uniform(0.25, 4.0);

        const double tp = std::pow(t, p);
        const double hx = cost.h(x);
        const double vdef = std::abs(cost.h(t * x) - tp * hx) / (1.0 + tp * hx);

        const double tp2 = std::pow(t, p - 2.0);
        const Mat d2 = cost.hessian(x);
        const double hdef =
            max_abs(cost.hessian(t * x) - tp2 * d2) / (1.0 + tp2 * max_abs(d2));

        rep.worst_value_defect = std::max(rep.worst_value_defect, vdef);
        rep.worst_hessian_defect = std::max(rep.worst_hessian_defect, hdef);
        if (vdef > tol || hdef > tol) {
            rep.ok = false;
            rep.violations.push_back({x, t, vdef, hdef});
        }
    }
    return rep;
}

} // namespace hmt
