#pragma once

#include <string>
#include <vector>

#include "hmt/bilinear_form.hpp"
#include "hmt/measure.hpp"
#include "hmt/multimap.hpp"
#include "hmt/types.hpp"

namespace hmt {

/// Shortest decimal representation that round-trips (used everywhere a
/// report must be byte-identical across runs).
std::string format_double(double v);

/// Quadruple CSV: each row `n, x1..xn, y1..yn, xi1..xin, zeta1..zetan`.
/// An optional header line is skipped when its first field is not a
/// number.
std::vector<Quadruple> read_quadruples(const std::string& path);
void write_quadruples(const std::string& path, const std::vector<Quadruple>& rows);

/// Map CSV: a header line holding the dimension n, then rows
/// `x1..xn, xi1..xin`. Repeated x rows accumulate values.
MultiMap read_map(const std::string& path);
void write_map(const std::string& path, const MultiMap& t);

/// Pair CSV (same layout as the map file): rows (x, y) of a candidate
/// c-monotone set.
std::vector<std::pair<Vec, Vec>> read_pairs(const std::string& path);
void write_pairs(const std::string& path, const std::vector<std::pair<Vec, Vec>>& pairs);

/// Density grid file: `n`, then per-axis box minima, per-axis maxima, the
/// per-axis resolution, then resolution^n row-major cell values.
GridMeasure read_density(const std::string& path);
void write_density(const std::string& path, const GridMeasure& g);

} // namespace hmt
