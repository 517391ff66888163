#include <doctest.h>

#include <cmath>

#include "hmt/bilinear_form.hpp"
#include "hmt/linalg.hpp"
#include "hmt/sampling.hpp"

using namespace hmt;

namespace {

Quadruple random_quadruple(Rng& rng, int dim, double span = 2.0) {
    return {rng.box_vector(dim, -span, span), rng.box_vector(dim, -span, span),
            rng.box_vector(dim, -span, span), rng.box_vector(dim, -span, span)};
}

Vec scalar(double v) {
    Vec x(1);
    x[0] = v;
    return x;
}

} // namespace

TEST_CASE("quadratic cost: A = 2I and Phi = 1 for any quadruple at any order") {
    const CostSpec c = make_power_cost(2, 2.0);
    Rng rng(11);
    for (int order : {2, 4, 16}) {
        const Quadruple q = random_quadruple(rng, 2);
        const FormResult fr = form_matrix(c, q, order);
        CHECK(max_abs(fr.A - 2.0 * Mat::Identity(2, 2)) < 1e-14);
        CHECK(fr.Phi == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(fr.converged);
    }
}

TEST_CASE("closed-form path integral in one dimension") {
    // path z = t, so A = 12 * int t^2 = 4 and Phi = int t^2 = 1/3
    const CostSpec c = make_power_cost(1, 4.0);
    const Quadruple q{scalar(1), scalar(0), scalar(0), scalar(0)};
    const FormResult fr = form_matrix(c, q, 16);
    CHECK(fr.A(0, 0) == doctest::Approx(4.0).epsilon(1e-13));
    CHECK(fr.Phi == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("fully degenerate quadruple: Phi = 0 and A = 0 for p > 2, Phi = 1 for p = 2") {
    Vec a(2);
    a << 0.3, -0.7;
    const Quadruple degenerate{a, a, a, a};
    for (double p : {3.0, 4.0, 6.0}) {
        const FormResult fr = form_matrix(make_power_cost(2, p), degenerate, 8);
        CHECK(fr.Phi == 0.0);
        CHECK(max_abs(fr.A) == 0.0);
    }
    CHECK(form_matrix(make_power_cost(2, 2.0), degenerate, 8).Phi ==
          doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("pair gap for the quadratic cost is 2<x-y, xi-zeta>") {
    const CostSpec c = make_power_cost(3, 2.0);
    Rng rng(12);
    for (int i = 0; i < 50; ++i) {
        const Quadruple q = random_quadruple(rng, 3);
        const double expected = 2.0 * (q.x - q.y).dot(q.xi - q.zeta);
        CHECK(monotone_pair_gap(c, q) == doctest::Approx(expected).epsilon(1e-11));
    }
}

TEST_CASE("identical targets or identical sources give an exact zero gap") {
    const CostSpec c = make_power_cost(2, 4.0);
    Rng rng(13);
    const Vec x = rng.box_vector(2, -2, 2), y = rng.box_vector(2, -2, 2),
              xi = rng.box_vector(2, -2, 2);
    CHECK(monotone_pair_gap(c, {x, y, xi, xi}) == 0.0);
    CHECK(monotone_pair_gap(c, {x, x, xi, y}) == 0.0);
}

TEST_CASE("anti-monotone pair in one dimension") {
    // direct fourth-power arithmetic: h(0)+h(0)-h(1)-h(-1) = -2
    const CostSpec c = make_power_cost(1, 4.0);
    const Quadruple q{scalar(1), scalar(0), scalar(0), scalar(1)};
    CHECK(monotone_pair_gap(c, q) == doctest::Approx(-2.0).epsilon(1e-14));
    FormResult fr;
    const double fg = form_gap(c, q, 16, &fr);
    // A = 12 * int (s+t-1)^2 = 2, times (x-y)(xi-zeta) = -1
    CHECK(fg == doctest::Approx(-2.0).epsilon(1e-13));
    CHECK(std::signbit(fg) == std::signbit(monotone_pair_gap(c, q)));
}

TEST_CASE("form gap vanishes when the sources coincide") {
    const CostSpec c = make_power_cost(2, 4.0);
    Rng rng(14);
    Quadruple q = random_quadruple(rng, 2);
    q.y = q.x;
    CHECK(form_gap(c, q, 8) == 0.0);
}

TEST_CASE("equivalence of the two gap formulations within the certified error") {
    Rng rng(15);
    for (double p : {2.0, 3.0, 4.0, 6.0}) {
        for (int dim : {1, 2, 3}) {
            const CostSpec c = make_power_cost(dim, p);
            for (int i = 0; i < 40; ++i) {
                const Quadruple q = random_quadruple(rng, dim);
                FormResult fr;
                const double fg = form_gap(c, q, 16, &fr);
                const double pg = monotone_pair_gap(c, q);
                const double budget = fr.est_error * (q.x - q.y).norm() * (q.xi - q.zeta).norm();
                CHECK(std::abs(pg - fg) <= budget);
                if (p == 2.0) CHECK(std::abs(pg - fg) <= 1e-10);
            }
        }
    }
}

TEST_CASE("exchange symmetry of the averaged matrix") {
    Rng rng(16);
    for (double p : {2.0, 3.0, 4.0}) {
        const CostSpec c = make_power_cost(2, p);
        for (int i = 0; i < 20; ++i) {
            const Quadruple q = random_quadruple(rng, 2);
            const FormResult a = form_matrix(c, q, 16);
            const FormResult b = form_matrix(c, q.exchanged(), 16);
            CHECK(max_abs(a.A - b.A) <= 2.0 * a.est_error);
        }
    }
}

TEST_CASE("Phi is positive off the fully degenerate configuration") {
    Rng rng(17);
    for (double p : {3.0, 4.0}) {
        const CostSpec c = make_power_cost(2, p);
        for (int i = 0; i < 50; ++i) {
            Quadruple q = random_quadruple(rng, 2, 1.0);
            // squeeze toward degeneracy but keep one strict separation
            q.y = q.x + 1e-6 * rng.unit_vector(2);
            q.zeta = q.xi;
            CHECK(form_matrix(c, q, 16).Phi > 0.0);
        }
    }
}

TEST_CASE("sandwich for the quadratic cost is exact") {
    const CostSpec c = make_power_cost(2, 2.0);
    Rng rng(18);
    const Quadruple q = random_quadruple(rng, 2);
    const Vec v = rng.unit_vector(2) * 1.7;
    const SandwichReport rep = sandwich_check(c, q, v, 8);
    CHECK(rep.pass);
    CHECK(rep.lower == doctest::Approx(2.0 * v.squaredNorm()).epsilon(1e-13));
    CHECK(rep.upper == doctest::Approx(2.0 * v.squaredNorm()).epsilon(1e-13));
    CHECK(rep.mid == doctest::Approx(2.0 * v.squaredNorm()).epsilon(1e-13));
}

TEST_CASE("sandwich property for the quartic cost") {
    const CostSpec c = make_power_cost(2, 4.0);
    Rng rng(19);
    for (int i = 0; i < 100; ++i) {
        const Quadruple q = random_quadruple(rng, 2);
        for (int k = 0; k < 10; ++k) {
            const SandwichReport rep = sandwich_check(c, q, rng.unit_vector(2), 16);
            CHECK(rep.pass);
        }
    }
}

TEST_CASE("sandwich on a degenerate quadruple reads 0 <= 0 <= 0") {
    const CostSpec c = make_power_cost(2, 4.0);
    Vec a(2);
    a << 1.0, 2.0;
    const SandwichReport rep = sandwich_check(c, {a, a, a, a}, Vec::Ones(2), 8);
    CHECK(rep.pass);
    CHECK(rep.lower == 0.0);
    CHECK(rep.upper == 0.0);
    CHECK(rep.mid == 0.0);
}

TEST_CASE("certified error shrinks (within noise) as the order doubles") {
    Rng rng(20);
    for (double p : {2.0, 3.0, 4.0, 6.0}) {
        const CostSpec c = make_power_cost(2, p);
        for (int i = 0; i < 10; ++i) {
            const Quadruple q = random_quadruple(rng, 2);
            double prev = -1.0;
            for (int order : {8, 16, 32}) {
                const double est = form_matrix(c, q, order).est_error;
                if (prev >= 0.0) CHECK(est <= 1.5 * prev + 1e-12);
                prev = est;
            }
        }
    }
}

TEST_CASE("adaptive subdivision engages for odd degrees with a path zero") {
    const CostSpec c = make_power_cost(1, 3.0);
    // path z = -1 + s + t crosses zero inside the square
    const Quadruple q{scalar(1), scalar(0), scalar(0), scalar(1)};
    const FormResult fr = form_matrix(c, q, 16);
    CHECK(fr.cells > 1);
    // oracle: A = 6 * int |s+t-1| = 6 * (1/3) = 2, Phi = int |s+t-1| = 1/3
    CHECK(fr.A(0, 0) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(fr.Phi == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
    CHECK(std::abs(fr.A(0, 0) - 2.0) <= fr.est_error);
}

TEST_CASE("preconditions") {
    const CostSpec c = make_power_cost(2, 2.0);
    Rng rng(21);
    const Quadruple q = random_quadruple(rng, 2);
    CHECK_THROWS_AS((void)form_matrix(c, q, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)sandwich_check(c, q, Vec::Zero(2)), std::invalid_argument);
    const Quadruple bad{Vec::Zero(2), Vec::Zero(3), Vec::Zero(2), Vec::Zero(2)};
    CHECK_THROWS_AS((void)form_matrix(c, bad, 8), std::invalid_argument);
}
