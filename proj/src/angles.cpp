#include "hmt/angles.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hmt/linalg.hpp"
#include "hmt/sampling.hpp"

namespace hmt {

AngleParams angle_params(const Mat& a, const Vec& e, const Vec& z, double lambda, double Lambda) {
    if (e.norm() == 0.0 || z.norm() == 0.0)
        throw std::invalid_argument("angle_params: zero axis or complement");
    const Vec ehat = e / e.norm();
    Vec zperp = z - z.dot(ehat) * ehat;
    if (zperp.norm() < 1e-14 * z.norm())
        throw std::invalid_argument("angle_params: complement is parallel to the axis");
    zperp /= zperp.norm();
    const double denom = ehat.dot(a * ehat);
    if (denom <= 0.0) throw std::invalid_argument("angle_params: matrix not positive on the axis");
    AngleParams p;
    p.B = zperp.dot(a * ehat) / denom;
    p.C = zperp.dot(a * zperp) / denom;
    p.lambda = lambda;
    p.Lambda = Lambda;
    return p;
}

double g_ratio(double s, const AngleParams& p) {
    if (s == 0.0) throw std::invalid_argument("g_ratio: s must be nonzero");
    const double radicand = 1.0 + p.C * s * s + 2.0 * p.B * s;
    if (radicand <= 0.0)
        throw std::domain_error("g_ratio: degenerate radicand (collinear case at s = -1/B)");
    const double val = (1.0 + p.B * s) / std::sqrt(radicand);
    return s > 0.0 ? val : -val;
}

double delta_gap(double s, const AngleParams& p) {
    if (p.C <= 0.0) throw std::invalid_argument("delta_gap: C must be positive");
    const double s_max = 1.0 / (2.0 * std::sqrt(p.C));
    if (!(s > 0.0 && s <= s_max))
        throw std::invalid_argument("delta_gap: s outside (0, 1/(2 sqrt(C))]");
    const double radicand = 1.0 + p.C * s * s + 2.0 * p.B * s;
    const double root = std::sqrt(radicand);
    return (p.C - p.B * p.B) * s * s / ((1.0 + p.B * s + root) * root);
}

FAngleResult F_angle(const CostSpec& cost, const Vec& x0, const Vec& x, const Vec& e,
                     const Quadruple& q, int quad_order) {
    if ((x - x0).norm() == 0.0) throw std::invalid_argument("F_angle: x must differ from x0");
    if (e.norm() == 0.0) throw std::invalid_argument("F_angle: axis must be nonzero");
    const FormResult fr = form_matrix(cost, q, quad_order);
    const EigRange er = symmetric_eig_range(fr.A);
    if (er.min <= 1e-12 * std::max(er.max, 0.0)) {
        std::ostringstream os;
        os << "F_angle: averaged matrix is numerically singular for the quadruple x="
           << q.x.transpose() << " y=" << q.y.transpose() << " xi=" << q.xi.transpose()
           << " zeta=" << q.zeta.transpose();
        throw std::domain_error(os.str());
    }
    const Mat root = spd_sqrt(fr.A);
    FAngleResult out;
    out.F = angle_between(root * (x - x0), root * e);
    out.delta = angle_between(x - x0, e);
    return out;
}

double G_lower_bound(double theta, double lambda, double Lambda) {
    const double theta1 = theta1_threshold(lambda, Lambda);
    if (!(theta >= M_PI - theta1 && theta <= M_PI))
        throw std::invalid_argument("G_lower_bound: theta outside the admissible window");
    const double arg = -1.0 + 8.0 * (Lambda / lambda) * (M_PI - theta) * (M_PI - theta);
    if (arg > 1.0)
        throw std::invalid_argument("G_lower_bound: arccos argument out of range");
    return std::acos(arg);
}

bool ConeSpec::contains(const Vec& p) const {
    const Vec d = p - vertex;
    if (d.norm() == 0.0) return true;
    return angle_between(d, axis) <= half_angle;
}

ConeGeometry cone_geometry(const Vec& xj, double r, const Vec& y2, int samples) {
    if (r <= 0.0) throw std::invalid_argument("cone_geometry: radius must be positive");
    const double d = (y2 - xj).norm();
    if (d <= r) throw std::invalid_argument("cone_geometry: vertex inside the closed ball");
    ConeGeometry out;
    out.sin_beta = r / d;
    out.alpha_max = 2.0 * std::asin(out.sin_beta);

    const int n = static_cast<int>(xj.size());
    std::vector<Vec> pts = ball_points(xj, r, samples);
    if (n >= 2) {
        // tangency extremes: the two sphere points seen from y2 at exactly beta
        const Vec axis = (xj - y2) / d;
        int k = 0;
        for (int i = 1; i < n; ++i)
            if (std::abs(axis[i]) < std::abs(axis[k])) k = i;
        Vec w = Vec::Zero(n);
        w[k] = 1.0;
        w -= w.dot(axis) * axis;
        w /= w.norm();
        const double tangent_len = std::sqrt(d * d - r * r);
        const double cos_b = tangent_len / d;
        pts.push_back(y2 + tangent_len * (cos_b * axis + out.sin_beta * w));
        pts.push_back(y2 + tangent_len * (cos_b * axis - out.sin_beta * w));
    }
    double alpha = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            alpha = std::max(alpha, angle_between(pts[i] - y2, pts[j] - y2));
    out.alpha_sampled = alpha;
    return out;
}

double delta0_threshold(double lambda, double Lambda) {
    if (!(lambda > 0.0 && Lambda >= lambda))
        throw std::invalid_argument("delta0_threshold: need 0 < lambda <= Lambda");
    return std::min(0.1, 0.25 * std::sqrt(lambda / Lambda));
}

double theta1_threshold(double lambda, double Lambda) {
    return delta0_threshold(lambda, Lambda);
}

double step2_epsilon(double lambda, double Lambda) {
    const double sin_theta1 = std::sin(theta1_threshold(lambda, Lambda));
    for (int n = 4; n <= 60; ++n) {
        const double eps = std::ldexp(1.0, -n); // 2^-n, strictly below 1/8
        if (4.0 * eps / (1.0 - 2.0 * eps) <= sin_theta1) return eps;
    }
    throw std::runtime_error("step2_epsilon: no admissible dyadic epsilon found");
}

} // namespace hmt
