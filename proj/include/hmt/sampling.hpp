#pragma once

#include <cstdint>
#include <vector>

#include "hmt/types.hpp"

namespace hmt {

/// Seeded generator used everywhere randomness is needed. All draws are
/// produced from raw 64-bit outputs of a fixed engine, so sequences are
/// reproducible across platforms and standard-library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next_u64();

    /// Uniform in [0, 1).
    double uniform();
    /// Uniform in [a, b).
    double uniform(double a, double b);
    /// Integer uniform in [0, n).
    std::uint64_t below(std::uint64_t n);
    /// Standard normal (Box-Muller).
    double normal();

    /// Uniform direction on the unit sphere in R^dim.
    Vec unit_vector(int dim);
    /// Uniform point in the ball of given radius.
    Vec in_ball(const Vec& center, double radius);
    /// Random vector with iid uniform(a,b) coordinates.
    Vec box_vector(int dim, double a, double b);

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Radical-inverse (Halton) sequence value for index i in the given prime base.
double radical_inverse(std::uint64_t i, unsigned base);

/// i-th point of the Halton sequence in (0,1)^dim, i >= 0.
Vec halton_point(std::uint64_t i, int dim);

/// Inverse of the standard normal CDF (Acklam's rational approximation,
/// relative error below 1.2e-9). Used to push low-discrepancy points to
/// Gaussians and thence to the sphere.
double inverse_normal_cdf(double p);

/// Deterministic low-discrepancy points on the unit sphere S^{dim-1}.
/// The first 2*dim entries are the signed coordinate axes.
std::vector<Vec> sphere_points(int dim, int count);

/// Deterministic low-discrepancy points in the closed ball B_radius(center).
std::vector<Vec> ball_points(const Vec& center, double radius, int count);

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

} // namespace hmt
