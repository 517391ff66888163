#include "hmt/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace hmt {

GaussRule gauss_legendre_unit(int points) {
    if (points < 1) throw std::invalid_argument("gauss_legendre_unit: need at least one point");
    const int n = points;
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            if (n == 1) { p1 = x; }
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double pn = (n == 1) ? x : p1;
            const double pnm1 = (n == 1) ? 1.0 : p0;
            pp = n * (x * pn - pnm1) / (x * x - 1.0);
            const double dx = pn / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.nodes[i] = 0.5 * (1.0 - x);       // shift to (0,1); cos guess is decreasing
        rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
        rule.weights[i] = 0.5 * w;
        rule.weights[n - 1 - i] = 0.5 * w;
    }
    return rule;
}

} // namespace hmt
