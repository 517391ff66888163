#include "hmt/measure.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "hmt/sampling.hpp"

namespace hmt {

std::int64_t CellGrid::cell_count() const {
    std::int64_t c = 1;
    for (int d = 0; d < dim(); ++d) c *= resolution;
    return c;
}

double CellGrid::cell_volume() const {
    double v = 1.0;
    for (int d = 0; d < dim(); ++d) v *= (hi[d] - lo[d]) / resolution;
    return v;
}

std::int64_t CellGrid::locate(const Vec& p) const {
    std::int64_t flat = 0;
    for (int d = 0; d < dim(); ++d) {
        const double w = (hi[d] - lo[d]) / resolution;
        const double rel = (p[d] - lo[d]) / w;
        if (rel < 0.0 || rel >= resolution) return -1;
        flat = flat * resolution + static_cast<std::int64_t>(rel);
    }
    return flat;
}

Vec CellGrid::cell_center(std::int64_t flat) const {
    auto [clo, chi] = cell_box(flat);
    return 0.5 * (clo + chi);
}

std::pair<Vec, Vec> CellGrid::cell_box(std::int64_t flat) const {
    if (flat < 0 || flat >= cell_count()) throw std::out_of_range("CellGrid::cell_box: bad index");
    Vec clo(dim()), chi(dim());
    for (int d = dim() - 1; d >= 0; --d) {
        const std::int64_t i = flat % resolution;
        flat /= resolution;
        const double w = (hi[d] - lo[d]) / resolution;
        clo[d] = lo[d] + i * w;
        chi[d] = lo[d] + (i + 1) * w;
    }
    return {clo, chi};
}

std::vector<Vec> CellGrid::cell_centers() const {
    std::vector<Vec> centers;
    centers.reserve(static_cast<std::size_t>(cell_count()));
    for (std::int64_t i = 0; i < cell_count(); ++i) centers.push_back(cell_center(i));
    return centers;
}

double GridMeasure::total_mass() const {
    double m = 0.0;
    for (double v : density) m += v;
    return m * grid.cell_volume();
}

CellMap rasterize(const MultiMap& t, const CellGrid& source_grid, const CellGrid& target_grid) {
    CellMap cm;
    cm.source_grid = source_grid;
    cm.target_grid = target_grid;
    cm.images.assign(static_cast<std::size_t>(source_grid.cell_count()), {});
    for (const auto& e : t.entries()) {
        const std::int64_t src = source_grid.locate(e.x);
        if (src < 0) {
            cm.dropped_points += static_cast<int>(e.values.size());
            continue;
        }
        for (const Vec& v : e.values) {
            const std::int64_t tgt = target_grid.locate(v);
            if (tgt < 0) {
                ++cm.dropped_points;
                continue;
            }
            auto& img = cm.images[static_cast<std::size_t>(src)];
            auto it = std::lower_bound(img.begin(), img.end(), tgt);
            if (it == img.end() || *it != tgt) img.insert(it, tgt);
        }
    }
    return cm;
}

double pushforward(const CellMap& t, const GridMeasure& f, const std::vector<std::int64_t>& e) {
    if (f.grid.cell_count() != t.source_grid.cell_count())
        throw std::invalid_argument("pushforward: density grid does not match the source grid");
    const std::set<std::int64_t> target(e.begin(), e.end());
    double mass = 0.0;
    for (std::size_t src = 0; src < t.images.size(); ++src) {
        bool hits = false;
        for (std::int64_t img : t.images[src])
            if (target.count(img)) {
                hits = true;
                break;
            }
        if (hits) mass += f.density[src];
    }
    return mass * f.grid.cell_volume();
}

double additivity_defect(const CellMap& t, const GridMeasure& f,
                         const std::vector<std::vector<std::int64_t>>& parts) {
    std::set<std::int64_t> seen;
    std::vector<std::int64_t> all;
    for (const auto& part : parts)
        for (std::int64_t c : part) {
            if (!seen.insert(c).second)
                throw std::invalid_argument("additivity_defect: parts are not pairwise disjoint");
            all.push_back(c);
        }
    double sum = 0.0;
    for (const auto& part : parts) sum += pushforward(t, f, part);
    return pushforward(t, f, all) - sum;
}

namespace {

// squared distance from p to the box [lo, hi]
double box_dist2(const Vec& p, const Vec& lo, const Vec& hi) {
    double d2 = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        const double d = std::max({lo[i] - p[i], 0.0, p[i] - hi[i]});
        d2 += d * d;
    }
    return d2;
}

// squared distance from p to the farthest corner of the box
double box_far_dist2(const Vec& p, const Vec& lo, const Vec& hi) {
    double d2 = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        const double d = std::max(std::abs(p[i] - lo[i]), std::abs(p[i] - hi[i]));
        d2 += d * d;
    }
    return d2;
}

} // namespace

std::vector<double> density_ratio(const CellGrid& grid, const std::vector<std::int64_t>& s,
                                  const Vec& x, const std::vector<double>& radii, int mc_samples,
                                  std::uint64_t seed) {
    for (double r : radii)
        if (r <= 0.0) throw std::invalid_argument("density_ratio: radii must be positive");
    const int n = grid.dim();
    const double cellvol = grid.cell_volume();
    std::vector<double> out;
    out.reserve(radii.size());
    Rng rng(seed);
    for (double r : radii) {
        const double ball_vol = unit_ball_volume(n) * std::pow(r, n);
        double inter = 0.0;
        for (std::int64_t cell : s) {
            const auto [clo, chi] = grid.cell_box(cell);
            if (box_dist2(x, clo, chi) >= r * r) continue; // fully outside
            if (box_far_dist2(x, clo, chi) <= r * r) {     // fully inside
                inter += cellvol;
                continue;
            }
            // boundary cell: Monte Carlo overlap fraction
            int hits = 0;
            for (int k = 0; k < mc_samples; ++k) {
                Vec p(n);
                for (int d = 0; d < n; ++d) p[d] = rng.uniform(clo[d], chi[d]);
                if ((p - x).squaredNorm() <= r * r) ++hits;
            }
            inter += cellvol * static_cast<double>(hits) / mc_samples;
        }
        out.push_back(inter / ball_vol);
    }
    return out;
}

std::vector<RegionRatio> density_ratio_region(const std::function<bool(const Vec&)>& member,
                                              const Vec& x, const std::vector<double>& radii,
                                              int samples, std::uint64_t seed) {
    std::vector<RegionRatio> out;
    out.reserve(radii.size());
    Rng rng(seed);
    for (double r : radii) {
        if (r <= 0.0) throw std::invalid_argument("density_ratio_region: radii must be positive");
        int hits = 0;
        for (int k = 0; k < samples; ++k)
            if (member(rng.in_ball(x, r))) ++hits;
        const double p = static_cast<double>(hits) / samples;
        out.push_back({p, std::sqrt(std::max(p * (1.0 - p), 1.0 / samples) / samples)});
    }
    return out;
}

std::vector<std::int64_t> cells_in_box(const CellGrid& grid, const Vec& lo, const Vec& hi,
                                       bool* clipped) {
    if (clipped) *clipped = false;
    std::vector<std::int64_t> cells;
    for (std::int64_t i = 0; i < grid.cell_count(); ++i) {
        const Vec c = grid.cell_center(i);
        bool inside = true;
        for (int d = 0; d < grid.dim(); ++d)
            if (c[d] < lo[d] || c[d] >= hi[d]) {
                inside = false;
                break;
            }
        if (inside) cells.push_back(i);
    }
    if (clipped)
        for (int d = 0; d < grid.dim(); ++d)
            if (lo[d] < grid.lo[d] || hi[d] > grid.hi[d]) *clipped = true;
    return cells;
}

} // namespace hmt
