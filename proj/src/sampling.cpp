#include "hmt/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace hmt {

std::uint64_t Rng::next_u64() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
    // modulo bias is irrelevant at the scales used here
    return next_u64() % n;
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = 0.0;
    do { u1 = uniform(); } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

Vec Rng::unit_vector(int dim) {
    if (dim < 1) throw std::invalid_argument("unit_vector: dim must be >= 1");
    if (dim == 1) {
        Vec v(1);
        v[0] = (uniform() < 0.5) ? -1.0 : 1.0;
        return v;
    }
    Vec v(dim);
    double norm = 0.0;
    do {
        for (int i = 0; i < dim; ++i) v[i] = normal();
        norm = v.norm();
    } while (norm < 1e-300);
    return v / norm;
}

Vec Rng::in_ball(const Vec& center, double radius) {
    const int dim = static_cast<int>(center.size());
    Vec dir = unit_vector(dim);
    const double r = radius * std::pow(uniform(), 1.0 / dim);
    return center + r * dir;
}

Vec Rng::box_vector(int dim, double a, double b) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = uniform(a, b);
    return v;
}

double radical_inverse(std::uint64_t i, unsigned base) {
    double inv = 1.0 / base;
    double f = inv;
    double r = 0.0;
    while (i > 0) {
        r += f * static_cast<double>(i % base);
        i /= base;
        f *= inv;
    }
    return r;
}

namespace {
constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
}

Vec halton_point(std::uint64_t i, int dim) {
    if (dim < 1 || dim > static_cast<int>(sizeof(kPrimes) / sizeof(kPrimes[0])))
        throw std::invalid_argument("halton_point: unsupported dimension");
    Vec v(dim);
    for (int d = 0; d < dim; ++d) v[d] = radical_inverse(i + 1, kPrimes[d]);
    return v;
}

double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("inverse_normal_cdf: p must be in (0,1)");
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    const double phigh = 1 - plow;
    double q, r;
    if (p < plow) {
        q = std::sqrt(-2 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    if (p > phigh) {
        q = std::sqrt(-2 * std::log(1 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    q = p - 0.5;
    r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}

std::vector<Vec> sphere_points(int dim, int count) {
    if (dim < 1) throw std::invalid_argument("sphere_points: dim must be >= 1");
    std::vector<Vec> pts;
    pts.reserve(static_cast<std::size_t>(count) + 2 * dim);
    for (int i = 0; i < dim; ++i) {
        Vec e = Vec::Zero(dim);
        e[i] = 1.0;
        pts.push_back(e);
        pts.push_back(-e);
    }
    if (dim == 1) return pts; // the sphere is {-1, +1}
    std::uint64_t idx = 0;
    int made = 0;
    while (made < count) {
        Vec u = halton_point(idx++, dim);
        Vec g(dim);
        bool ok = true;
        for (int dcoord = 0; dcoord < dim; ++dcoord) {
            const double p = u[dcoord];
            if (p <= 1e-12 || p >= 1.0 - 1e-12) { ok = false; break; }
            g[dcoord] = inverse_normal_cdf(p);
        }
        if (!ok) continue;
        const double norm = g.norm();
        if (norm < 1e-8) continue;
        pts.push_back(g / norm);
        ++made;
    }
    return pts;
}

std::vector<Vec> ball_points(const Vec& center, double radius, int count) {
    const int dim = static_cast<int>(center.size());
    std::vector<Vec> pts;
    pts.reserve(static_cast<std::size_t>(count) + 1);
    pts.push_back(center);
    std::uint64_t idx = 0;
    int made = 0;
    while (made < count) {
        // dim coordinates for the direction, one extra for the radius
        Vec u = halton_point(idx++, dim + 1);
        Vec g(dim);
        bool ok = true;
        for (int dcoord = 0; dcoord < dim; ++dcoord) {
            const double p = u[dcoord];
            if (p <= 1e-12 || p >= 1.0 - 1e-12) { ok = false; break; }
            g[dcoord] = inverse_normal_cdf(p);
        }
        if (!ok) continue;
        const double norm = g.norm();
        if (norm < 1e-8) continue;
        const double r = radius * std::pow(u[dim], 1.0 / dim);
        pts.push_back(center + (r / norm) * g);
        ++made;
    }
    return pts;
}

double unit_ball_volume(int n) {
    return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

} // namespace hmt
