#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "hmt/quadrature.hpp"

using namespace hmt;

namespace {

// oracle: integral of x^k over (0,1) is 1/(k+1)
double monomial_integral(int k) { return 1.0 / (k + 1); }

double apply(const GaussRule& r, int k) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
    return s;
}

} // namespace

TEST_CASE("nodes are interior and weights sum to one") {
    for (int n : {1, 2, 4, 8, 15, 16, 32}) {
        const GaussRule r = gauss_legendre_unit(n);
        REQUIRE(r.nodes.size() == static_cast<std::size_t>(n));
        double wsum = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
            CHECK(r.nodes[i] > 0.0);
            CHECK(r.nodes[i] < 1.0);
            if (i > 0) CHECK(r.nodes[i] > r.nodes[i - 1]);
            wsum += r.weights[i];
        }
        CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("an n-point rule is exact up to degree 2n-1") {
    for (int n : {2, 3, 5, 8, 16}) {
        const GaussRule r = gauss_legendre_unit(n);
        for (int k = 0; k <= 2 * n - 1; ++k)
            CHECK(apply(r, k) == doctest::Approx(monomial_integral(k)).epsilon(1e-13));
        // sharpness is only visible at low orders; higher-order residuals
        // sink below machine precision
        if (n <= 5) CHECK(std::abs(apply(r, 2 * n) - monomial_integral(2 * n)) > 1e-15);
    }
}

TEST_CASE("high order handles smooth non-polynomials") {
    const GaussRule r = gauss_legendre_unit(16);
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::exp(r.nodes[i]);
    CHECK(s == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
}

TEST_CASE("invalid order rejected") {
    CHECK_THROWS_AS((void)gauss_legendre_unit(0), std::invalid_argument);
}
