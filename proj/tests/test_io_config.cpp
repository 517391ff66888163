#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "hmt/config.hpp"
#include "hmt/io.hpp"
#include "hmt/sampling.hpp"

using namespace hmt;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("io_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("config parsing") {
    const RunConfig cfg = RunConfig::parse_string(
        "# a comment\n"
        "cost.kind = power\n"
        "cost.dim = 2\n"
        "cost.p = 4\n"
        "quad.order = 16   # trailing comment\n"
        "measure.radii = 0.1, 0.2, 0.4\n");
    CHECK(cfg.get_string("cost.kind") == "power");
    CHECK(cfg.get_int("cost.dim") == 2);
    CHECK(cfg.get_double("cost.p") == 4.0);
    CHECK(cfg.get_int("quad.order", 8) == 16);
    CHECK(cfg.get_int("missing", 7) == 7);
    CHECK(cfg.get_doubles("measure.radii") == std::vector<double>{0.1, 0.2, 0.4});
    CHECK_THROWS(cfg.get_string("nope"));
    CHECK_THROWS((void)RunConfig::parse_string("just words\n"));
}

TEST_CASE("cost block construction") {
    const CostSpec power = cost_from_config(RunConfig::parse_string(
        "cost.kind = power\ncost.dim = 3\ncost.p = 3\n"));
    CHECK(power.kind() == CostKind::power);
    CHECK(power.dim() == 3);
    CHECK(power.degree() == 3.0);

    const CostSpec aniso = cost_from_config(RunConfig::parse_string(
        "cost.kind = anisotropic\ncost.dim = 2\ncost.p = 2\ncost.matrix = 1, 0, 0, 4\n"));
    CHECK(aniso.kind() == CostKind::anisotropic);
    CHECK(aniso.matrix()(1, 1) == 4.0);

    CHECK_THROWS((void)cost_from_config(RunConfig::parse_string(
        "cost.kind = weird\ncost.dim = 2\ncost.p = 2\n")));
}

TEST_CASE("doubles format round-trips") {
    Rng rng(81);
    for (int i = 0; i < 200; ++i) {
        const double v = (rng.uniform() - 0.5) * std::pow(10.0, rng.uniform(-12.0, 12.0));
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0) == "1");
}

TEST_CASE("quadruple files round-trip") {
    TempFile f("quadruples.csv");
    Rng rng(82);
    std::vector<Quadruple> rows;
    for (int i = 0; i < 10; ++i)
        rows.push_back({rng.box_vector(2, -2, 2), rng.box_vector(2, -2, 2),
                        rng.box_vector(2, -2, 2), rng.box_vector(2, -2, 2)});
    write_quadruples(f.path, rows);
    const auto back = read_quadruples(f.path);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK((rows[i].x - back[i].x).norm() == 0.0);
        CHECK((rows[i].zeta - back[i].zeta).norm() == 0.0);
    }
}

TEST_CASE("map files accumulate repeated domain points") {
    TempFile f("map.csv");
    {
        std::ofstream out(f.path);
        out << "1\n0,1\n0,2\n1,3\n";
    }
    const MultiMap t = read_map(f.path);
    CHECK(t.dim() == 1);
    CHECK(t.domain_size() == 2);
    CHECK(t.graph_size() == 3);

    TempFile g("map_round.csv");
    write_map(g.path, t);
    const MultiMap back = read_map(g.path);
    CHECK(back.graph_size() == t.graph_size());
}

TEST_CASE("pair files round-trip") {
    TempFile f("pairs.csv");
    Rng rng(83);
    std::vector<std::pair<Vec, Vec>> pairs;
    for (int i = 0; i < 6; ++i)
        pairs.emplace_back(rng.box_vector(3, -1, 1), rng.box_vector(3, -1, 1));
    write_pairs(f.path, pairs);
    const auto back = read_pairs(f.path);
    REQUIRE(back.size() == pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i)
        CHECK((pairs[i].second - back[i].second).norm() == 0.0);
}

TEST_CASE("density files round-trip") {
    TempFile f("density.txt");
    GridMeasure g;
    g.grid.lo = Vec::Zero(2);
    g.grid.hi = Vec::Ones(2) * 2.0;
    g.grid.resolution = 3;
    g.density = {1, 2, 3, 4, 5, 6, 7, 8, 9};
    write_density(f.path, g);
    const GridMeasure back = read_density(f.path);
    CHECK(back.grid.resolution == 3);
    CHECK(back.grid.hi[1] == 2.0);
    CHECK(back.density == g.density);
    CHECK(back.total_mass() == doctest::Approx(45.0 * g.grid.cell_volume()));
}

TEST_CASE("malformed inputs are reported") {
    TempFile f("bad.csv");
    {
        std::ofstream out(f.path);
        out << "2\n1,2,3\n"; // row with 3 values for n = 2
    }
    CHECK_THROWS((void)read_map(f.path));
    CHECK_THROWS((void)read_map("missing_file_13579.csv"));
}
