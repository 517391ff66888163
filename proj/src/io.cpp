#include "hmt/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hmt {

std::string format_double(double v) {
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        double back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == v) return buf;
    }
    return buf;
}

namespace {

std::vector<double> split_numbers(const std::string& line, bool* numeric = nullptr) {
    std::string s = line;
    for (char& c : s)
        if (c == ',' || c == ';' || c == '\t') c = ' ';
    std::istringstream in(s);
    std::vector<double> out;
    double v;
    while (in >> v) out.push_back(v);
    if (numeric) *numeric = in.eof() && !out.empty();
    return out;
}

std::vector<std::vector<double>> read_numeric_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        if (line.find_first_not_of(" \t\r\n,") == std::string::npos) continue;
        bool numeric = false;
        std::vector<double> vals = split_numbers(line, &numeric);
        if (!numeric) {
            if (first) { // header line
                first = false;
                continue;
            }
            throw std::runtime_error(path + ": non-numeric row");
        }
        first = false;
        rows.push_back(std::move(vals));
    }
    return rows;
}

Vec to_vec(const std::vector<double>& row, std::size_t offset, int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = row[offset + static_cast<std::size_t>(i)];
    return v;
}

} // namespace

std::vector<Quadruple> read_quadruples(const std::string& path) {
    std::vector<Quadruple> out;
    for (const auto& row : read_numeric_rows(path)) {
        const int n = static_cast<int>(row[0]);
        if (n < 1 || row.size() != 1 + 4 * static_cast<std::size_t>(n))
            throw std::runtime_error(path + ": quadruple row must hold n and 4n coordinates");
        out.push_back({to_vec(row, 1, n), to_vec(row, 1 + n, n), to_vec(row, 1 + 2 * n, n),
                       to_vec(row, 1 + 3 * n, n)});
    }
    return out;
}

void write_quadruples(const std::string& path, const std::vector<Quadruple>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "n,x,y,xi,zeta\n";
    for (const auto& q : rows) {
        out << q.dim();
        for (const Vec* v : {&q.x, &q.y, &q.xi, &q.zeta})
            for (Eigen::Index i = 0; i < v->size(); ++i) out << ',' << format_double((*v)[i]);
        out << '\n';
    }
}

namespace {

std::pair<int, std::vector<std::vector<double>>> read_headed_rows(const std::string& path,
                                                                  const char* what) {
    auto rows = read_numeric_rows(path);
    if (rows.empty()) throw std::runtime_error(path + ": empty file");
    if (rows.front().size() != 1)
        throw std::runtime_error(path + std::string(": first line must hold the dimension (") +
                                 what + ")");
    const int n = static_cast<int>(rows.front()[0]);
    if (n < 1) throw std::runtime_error(path + ": dimension must be positive");
    rows.erase(rows.begin());
    for (const auto& row : rows)
        if (row.size() != 2 * static_cast<std::size_t>(n))
            throw std::runtime_error(path + ": rows must hold 2n coordinates");
    return {n, std::move(rows)};
}

} // namespace

MultiMap read_map(const std::string& path) {
    auto [n, rows] = read_headed_rows(path, "map file");
    MultiMap t(n);
    for (const auto& row : rows) t.add(to_vec(row, 0, n), to_vec(row, static_cast<std::size_t>(n), n));
    return t;
}

void write_map(const std::string& path, const MultiMap& t) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << t.dim() << '\n';
    for (const auto& [x, xi] : t.graph()) {
        for (Eigen::Index i = 0; i < x.size(); ++i) out << format_double(x[i]) << ',';
        for (Eigen::Index i = 0; i < xi.size(); ++i)
            out << format_double(xi[i]) << (i + 1 < xi.size() ? "," : "");
        out << '\n';
    }
}

std::vector<std::pair<Vec, Vec>> read_pairs(const std::string& path) {
    auto [n, rows] = read_headed_rows(path, "pair file");
    std::vector<std::pair<Vec, Vec>> out;
    out.reserve(rows.size());
    for (const auto& row : rows)
        out.emplace_back(to_vec(row, 0, n), to_vec(row, static_cast<std::size_t>(n), n));
    return out;
}

void write_pairs(const std::string& path, const std::vector<std::pair<Vec, Vec>>& pairs) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    if (pairs.empty()) throw std::runtime_error("write_pairs: empty set");
    out << pairs.front().first.size() << '\n';
    for (const auto& [x, y] : pairs) {
        for (Eigen::Index i = 0; i < x.size(); ++i) out << format_double(x[i]) << ',';
        for (Eigen::Index i = 0; i < y.size(); ++i)
            out << format_double(y[i]) << (i + 1 < y.size() ? "," : "");
        out << '\n';
    }
}

GridMeasure read_density(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    int n = 0;
    if (!(in >> n) || n < 1) throw std::runtime_error(path + ": bad dimension");
    GridMeasure g;
    g.grid.lo.resize(n);
    g.grid.hi.resize(n);
    for (int i = 0; i < n; ++i)
        if (!(in >> g.grid.lo[i])) throw std::runtime_error(path + ": bad box minima");
    for (int i = 0; i < n; ++i)
        if (!(in >> g.grid.hi[i])) throw std::runtime_error(path + ": bad box maxima");
    for (int i = 0; i < n; ++i)
        if (g.grid.hi[i] <= g.grid.lo[i]) throw std::runtime_error(path + ": empty box");
    if (!(in >> g.grid.resolution) || g.grid.resolution < 1)
        throw std::runtime_error(path + ": bad resolution");
    const std::int64_t cells = g.grid.cell_count();
    g.density.resize(static_cast<std::size_t>(cells));
    for (std::int64_t i = 0; i < cells; ++i) {
        if (!(in >> g.density[static_cast<std::size_t>(i)]))
            throw std::runtime_error(path + ": expected " + std::to_string(cells) + " cell values");
        if (g.density[static_cast<std::size_t>(i)] < 0.0)
            throw std::runtime_error(path + ": density values must be nonnegative");
    }
    return g;
}

void write_density(const std::string& path, const GridMeasure& g) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    const int n = g.grid.dim();
    out << n << '\n';
    for (int i = 0; i < n; ++i) out << format_double(g.grid.lo[i]) << (i + 1 < n ? " " : "\n");
    for (int i = 0; i < n; ++i) out << format_double(g.grid.hi[i]) << (i + 1 < n ? " " : "\n");
    out << g.grid.resolution << '\n';
    for (std::size_t i = 0; i < g.density.size(); ++i)
        out << format_double(g.density[i]) << (i + 1 < g.density.size() ? "\n" : "\n");
}

} // namespace hmt
