#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hmt/multimap.hpp"
#include "hmt/sampling.hpp"

using namespace hmt;

namespace {

Vec scalar(double v) {
    Vec x(1);
    x[0] = v;
    return x;
}

MultiMap identity_map_1d(const std::vector<double>& xs) {
    MultiMap t(1);
    for (double x : xs) t.add(scalar(x), scalar(x));
    return t;
}

} // namespace

TEST_CASE("ingestion deduplicates domain points and merges values") {
    MultiMap t(1);
    t.add(scalar(0), scalar(1));
    t.add(scalar(0), scalar(2));
    t.add(scalar(0), scalar(1)); // exact duplicate value
    t.add(scalar(1), scalar(3));
    CHECK(t.domain_size() == 2);
    CHECK(t.graph_size() == 3);
    CHECK_FALSE(t.single_valued());
    CHECK(t.entries()[0].values.size() == 2);
}

TEST_CASE("identity map is monotone for the quadratic cost") {
    const CostSpec c = make_power_cost(1, 2.0);
    const MultiMap t = identity_map_1d({-1.0, 0.0, 0.5, 2.0});
    const ViolationReport r = check_h_monotone(c, t, 1e-12);
    CHECK(r.ok());
    CHECK(r.worst_gap == 0.0);
    CHECK(r.checked_count == 6);
}

TEST_CASE("the decreasing swap map is flagged with gap -2") {
    const CostSpec c = make_power_cost(1, 2.0);
    MultiMap t(1);
    t.add(scalar(0), scalar(1));
    t.add(scalar(1), scalar(0));
    const ViolationReport r = check_h_monotone(c, t, 1e-12);
    REQUIRE(r.witnesses.size() == 1);
    CHECK(r.worst_gap == doctest::Approx(-2.0).epsilon(1e-14));
}

TEST_CASE("graph guard rejects oversized inputs unless raised") {
    const CostSpec c = make_power_cost(1, 2.0);
    MultiMap t(1);
    for (int i = 0; i < 50; ++i) t.add(scalar(i), scalar(i));
    CHECK_THROWS_AS((void)check_h_monotone(c, t, 1e-12, 10), std::invalid_argument);
    CHECK(check_h_monotone(c, t, 1e-12, 2000).ok());
}

TEST_CASE("inversion transposes the graph and is an involution") {
    MultiMap t(1);
    t.add(scalar(0), scalar(1));
    t.add(scalar(0), scalar(2));
    const MultiMap inv = invert(t);
    CHECK(inv.domain_size() == 2);
    for (const auto& [x, xi] : inv.graph()) CHECK(xi[0] == 0.0);

    Rng rng(31);
    MultiMap u(2);
    for (int i = 0; i < 20; ++i) u.add(rng.box_vector(2, -1, 1), rng.box_vector(2, -1, 1));
    const auto g1 = u.graph();
    auto g2 = invert(invert(u)).graph();
    REQUIRE(g1.size() == g2.size());
    for (std::size_t i = 0; i < g1.size(); ++i) {
        CHECK((g1[i].first - g2[i].first).norm() == 0.0);
        CHECK((g1[i].second - g2[i].second).norm() == 0.0);
    }
}

TEST_CASE("two-point cycles coincide with the pairwise check") {
    const CostSpec c = make_power_cost(1, 2.0);
    MultiMap t(1);
    t.add(scalar(0), scalar(1));
    t.add(scalar(1), scalar(0));
    t.add(scalar(2), scalar(2));
    const ViolationReport pairwise = check_h_monotone(c, t, 1e-12);
    const ViolationReport cyc = check_cyclic(c, t, 2, 1e-12);
    CHECK(pairwise.witnesses.size() == cyc.witnesses.size());
    CHECK(pairwise.worst_gap == doctest::Approx(cyc.worst_gap));
    CHECK(cyc.coverage == 1.0);
}

TEST_CASE("three-cycle counterexample is flagged") {
    const CostSpec c = make_power_cost(1, 2.0);
    MultiMap t(1);
    t.add(scalar(0), scalar(1));
    t.add(scalar(1), scalar(2));
    t.add(scalar(2), scalar(0));
    const ViolationReport r = check_cyclic(c, t, 3, 1e-12);
    CHECK_FALSE(r.ok());

    // brute-force oracle over the six permutations of the full 3-subset
    const auto g = t.graph();
    double worst = 0.0;
    std::vector<std::size_t> sigma{0, 1, 2};
    std::sort(sigma.begin(), sigma.end());
    do {
        double permuted = 0.0, base = 0.0;
        for (std::size_t k = 0; k < 3; ++k) {
            base += c.pair_cost(g[k].first, g[k].second);
            permuted += c.pair_cost(g[k].first, g[sigma[k]].second);
        }
        worst = std::min(worst, permuted - base);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    CHECK(r.worst_gap == doctest::Approx(worst).epsilon(1e-12));
}

TEST_CASE("a rotation is pairwise monotone but fails the three-cycle test") {
    const CostSpec c = make_power_cost(2, 2.0);
    const double phi = 80.0 * M_PI / 180.0;
    Mat rot(2, 2);
    rot << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
    MultiMap t(2);
    for (double ang : {0.0, 2.0 * M_PI / 3.0, 4.0 * M_PI / 3.0}) {
        Vec x(2);
        x << std::cos(ang), std::sin(ang);
        t.add(x, rot * x);
    }
    CHECK(check_h_monotone(c, t, 1e-12).ok());
    CHECK_FALSE(check_cyclic(c, t, 3, 1e-12).ok());
}

TEST_CASE("sampling cap reports coverage below one") {
    const CostSpec c = make_power_cost(1, 2.0);
    MultiMap t(1);
    for (int i = 0; i < 40; ++i) t.add(scalar(i), scalar(i));
    const ViolationReport r = check_cyclic(c, t, 5, 1e-12, 20000, 9);
    CHECK(r.ok());
    CHECK(r.coverage < 1.0);
    CHECK(r.checked_count <= 20000 + 120); // shares budget across sizes
}

TEST_CASE("inverse monotonicity requires an even cost") {
    const CostSpec uneven = make_custom_cost(
        1, 2.0, [](const Vec& x) { return x[0] >= 0 ? x[0] * x[0] : 2.0 * x[0] * x[0]; },
        [](const Vec& x) { return Vec(scalar(x[0] >= 0 ? 2.0 * x[0] : 4.0 * x[0])); },
        [](const Vec& x) {
            Mat h(1, 1);
            h(0, 0) = x[0] >= 0 ? 2.0 : 4.0;
            return h;
        });
    MultiMap t(1);
    t.add(scalar(0), scalar(0));
    CHECK_THROWS_AS((void)check_inverse_monotone(uneven, t, 1e-12), std::invalid_argument);
}

TEST_CASE("non-monotone maps stay non-monotone after inversion") {
    const CostSpec c = make_power_cost(1, 2.0);
    MultiMap t(1);
    t.add(scalar(0), scalar(1));
    t.add(scalar(1), scalar(0));
    const ViolationReport fwd = check_h_monotone(c, t, 1e-12);
    const ViolationReport bwd = check_inverse_monotone(c, t, 1e-12);
    CHECK(fwd.worst_gap == doctest::Approx(bwd.worst_gap));
}

TEST_CASE("singleton graphs are trivially monotone both ways") {
    const CostSpec c = make_power_cost(2, 4.0);
    MultiMap t(2);
    t.add(Vec::Zero(2), Vec::Ones(2));
    CHECK(check_h_monotone(c, t, 1e-12).ok());
    CHECK(check_inverse_monotone(c, t, 1e-12).ok());
}

TEST_CASE("extension gaps against a finite graph") {
    const CostSpec c = make_power_cost(1, 2.0);
    MultiMap t(1);
    t.add(scalar(0), scalar(0));
    t.add(scalar(1), scalar(1));
    // candidate already in the graph
    CHECK(maximality_gap(c, t, scalar(0), scalar(0)) >= 0.0);
    // midpoint of the identity extends: min gap is 2*(0.5)*(0.5) = 0.5
    CHECK(maximality_gap(c, t, scalar(0.5), scalar(0.5)) == doctest::Approx(0.5).epsilon(1e-14));
    // overshooting target: gap against (1,1) is 2(0.5-1)(5-1) = -4
    CHECK(maximality_gap(c, t, scalar(0.5), scalar(5.0)) == doctest::Approx(-4.0).epsilon(1e-14));
}

TEST_CASE("continuity profile") {
    const std::vector<double> radii{0.25, 0.5, 1.0, 2.0, 4.0};
    const MultiMap ident = identity_map_1d({0.0, 0.3, 1.0, 2.5});
    const auto prof = continuity_profile(ident, radii);
    for (std::size_t i = 0; i < prof.size(); ++i) {
        CHECK(prof[i].second <= prof[i].first + 1e-14); // profile(r) <= r for the identity
        if (i > 0) CHECK(prof[i].second >= prof[i - 1].second);
    }

    MultiMap constant(1);
    for (double x : {0.0, 1.0, 2.0}) constant.add(scalar(x), scalar(7.0));
    for (const auto& [r, osc] : continuity_profile(constant, radii)) CHECK(osc == 0.0);

    MultiMap multi(1);
    multi.add(scalar(0), scalar(0));
    multi.add(scalar(0), scalar(1));
    CHECK_THROWS_AS((void)continuity_profile(multi, radii), std::invalid_argument);
}

TEST_CASE("default tolerance scales with the degree") {
    const CostSpec c = make_power_cost(1, 4.0);
    MultiMap t(1);
    t.add(scalar(10), scalar(10));
    CHECK(default_check_tol(c, t) == doctest::Approx(1e-9 * (1.0 + 1e4)));
}
