#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hmt/multimap.hpp"
#include "hmt/types.hpp"

namespace hmt {

/// Axis-aligned box partitioned into resolution^n half-open cells
/// [lo + i w, lo + (i+1) w) per axis; points on the far faces of the box
/// belong to no cell.
struct CellGrid {
    Vec lo, hi;
    int resolution = 1;

    int dim() const { return static_cast<int>(lo.size()); }
    std::int64_t cell_count() const;
    double cell_volume() const;
    /// Flat index of the cell containing p, or -1 when outside the box.
    std::int64_t locate(const Vec& p) const;
    Vec cell_center(std::int64_t flat) const;
    /// Per-axis bounds of a cell.
    std::pair<Vec, Vec> cell_box(std::int64_t flat) const;
    std::vector<Vec> cell_centers() const;
};

/// Nonnegative density sampled on a grid (the role of f in the push
/// forward integral).
struct GridMeasure {
    CellGrid grid;
    std::vector<double> density; // cell values, >= 0

    double total_mass() const;
};

/// A multimap rasterized to cells: source cell -> set of target cells.
struct CellMap {
    CellGrid source_grid;
    CellGrid target_grid;
    std::vector<std::vector<std::int64_t>> images; // per source cell, sorted target cells
    int dropped_points = 0; // map points whose x or value fell outside a box
};

CellMap rasterize(const MultiMap& t, const CellGrid& source_grid, const CellGrid& target_grid);

/// Discrete push-forward mass mu(E) = sum of f * cellvolume over source
/// cells whose image set intersects E.
double pushforward(const CellMap& t, const GridMeasure& f, const std::vector<std::int64_t>& e);

/// mu(union of parts) - sum_i mu(part_i), always <= 0; its magnitude is
/// the mass of source cells whose image touches more than one part.
/// Parts must be pairwise disjoint.
double additivity_defect(const CellMap& t, const GridMeasure& f,
                         const std::vector<std::vector<std::int64_t>>& parts);

/// |S cap B_r(x)| / |B_r(x)| for a union-of-cells region S: interior and
/// exterior cells are counted exactly, cells straddling the sphere get a
/// seeded Monte Carlo overlap fraction (at least mc_samples points each).
std::vector<double> density_ratio(const CellGrid& grid, const std::vector<std::int64_t>& s,
                                  const Vec& x, const std::vector<double>& radii,
                                  int mc_samples = 10000, std::uint64_t seed = 1);

struct RegionRatio {
    double ratio = 0.0;
    double sigma = 0.0; // binomial standard error of the estimate
};

/// Same ratio for an exactly described region: plain Monte Carlo over the
/// ball, avoiding any rasterization bias. Used where the region has a
/// known closed-form ratio to compare against.
std::vector<RegionRatio> density_ratio_region(const std::function<bool(const Vec&)>& member,
                                              const Vec& x, const std::vector<double>& radii,
                                              int samples = 100000, std::uint64_t seed = 1);

/// Cells of the grid whose center lies in the half-open box [lo, hi);
/// clipped to the grid. Sets *clipped when part of the request fell
/// outside.
std::vector<std::int64_t> cells_in_box(const CellGrid& grid, const Vec& lo, const Vec& hi,
                                       bool* clipped = nullptr);

} // namespace hmt
