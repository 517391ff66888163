#pragma once

#include "hmt/bilinear_form.hpp"
#include "hmt/cost.hpp"
#include "hmt/types.hpp"

namespace hmt {

/// Scalar data of the distorted-angle analysis: for a symmetric positive
/// definite A and unit vectors ehat (axis) and zhat (orthogonal
/// complement),
///   B = <A zhat, ehat> / <A ehat, ehat>,  C = <A zhat, zhat> / <A ehat, ehat>.
/// Cauchy-Schwarz gives |B| <= sqrt(C), and the ellipticity sandwich pins
/// C between lambda/Lambda and Lambda/lambda.
struct AngleParams {
    double B = 0.0;
    double C = 1.0;
    double lambda = 1.0;
    double Lambda = 1.0;
};

/// Extracts (B, C) from a matrix and an axis/orthogonal pair. z must be
/// nonzero and is orthogonalized against e internally.
AngleParams angle_params(const Mat& a, const Vec& e, const Vec& z, double lambda, double Lambda);

/// g(s) = sign(s) * (1 + B s) / sqrt(1 + C s^2 + 2 B s). The cosine of the
/// distorted angle as a function of tan(delta). Throws on a degenerate
/// radicand (possible only when |B| = sqrt(C) at s = -1/B) and at s = 0.
double g_ratio(double s, const AngleParams& p);

/// Delta(s) = 1 - g(s) for 0 < s <= 1/(2 sqrt(C)), evaluated through the
/// cancellation-free closed form
///   (C - B^2) s^2 / ((1 + B s + sqrt(R)) sqrt(R)),  R = 1 + C s^2 + 2 B s.
/// Satisfies 0 <= Delta(s) <= 2 (C - B^2) s^2 on that range.
double delta_gap(double s, const AngleParams& p);

struct FAngleResult {
    double F = 0.0;     // angle(A^(1/2)(x - x0), A^(1/2) e)
    double delta = 0.0; // angle(x - x0, e)
};

/// Distorted and Euclidean angles for the configuration (x0, x, e) with
/// A = form_matrix(q).A. The matrix square root uses a symmetric
/// eigendecomposition; a numerically singular A (min eigenvalue below
/// 1e-12 times the max) is rejected with the offending quadruple named.
FAngleResult F_angle(const CostSpec& cost, const Vec& x0, const Vec& x, const Vec& e,
                     const Quadruple& q, int quad_order = 16);

/// arccos(-1 + 8 (Lambda/lambda) (pi - theta)^2): the guaranteed lower
/// bound for the distorted angle of a near-antipodal configuration.
/// Admissible window: pi - theta1 <= theta <= pi with the arccos argument
/// in [-1, 1]; rejected otherwise.
double G_lower_bound(double theta, double lambda, double Lambda);

/// Axis-aligned cone {x : angle(x - vertex, axis) <= half_angle}. The
/// vertex itself is a member.
struct ConeSpec {
    Vec vertex;
    Vec axis;
    double half_angle = 0.0;

    bool contains(const Vec& p) const;
};

/// Ice-cream-cone geometry of a ball B_r(xj) seen from an external vertex
/// y2: sin_beta = r/|y2-xj| is the half-angle of the tangent cone,
/// alpha_max = 2 asin(sin_beta) bounds the mutual angle at y2 of any two
/// ball points, and alpha_sampled cross-checks it on deterministic ball
/// samples (including the tangency extremes). sin(alpha_sampled) <=
/// 2 sin_beta always.
struct ConeGeometry {
    double sin_beta = 0.0;
    double alpha_max = 0.0;
    double alpha_sampled = 0.0;
};
ConeGeometry cone_geometry(const Vec& xj, double r, const Vec& y2, int samples = 128);

/// Admissible cone half-angle delta0 = min(0.1, 0.25 sqrt(lambda/Lambda)):
/// small enough that tan(delta) <= (1/2) sqrt(lambda/Lambda) and
/// tan(delta) <= 2 delta both hold on (0, delta0].
double delta0_threshold(double lambda, double Lambda);

/// Same value used as the width of the near-antipodal window
/// (pi - theta1, pi).
double theta1_threshold(double lambda, double Lambda);

/// Ball-radius factor for the exclusion construction: the largest
/// epsilon in {2^-n} with 4 eps / (1 - 2 eps) <= sin(theta1) and
/// eps < 1/8, so that every ball point is seen from y2 within theta1 of
/// the antipode.
double step2_epsilon(double lambda, double Lambda);

} // namespace hmt
