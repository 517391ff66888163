#include "hmt/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace hmt {

double angle_between(const Vec& u, const Vec& v) {
    const double nu = u.norm();
    const double nv = v.norm();
    if (nu == 0.0 || nv == 0.0)
        throw std::invalid_argument("angle_between: zero vector");
    const Vec a = u / nu;
    const Vec b = v / nv;
    return 2.0 * std::atan2((a - b).norm(), (a + b).norm());
}

Mat spd_sqrt(const Mat& a, double floor_rel) {
    Eigen::SelfAdjointEigenSolver<Mat> es(a);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("spd_sqrt: eigendecomposition failed");
    Vec ev = es.eigenvalues();
    const double floor = floor_rel * std::max(std::abs(ev.maxCoeff()), std::abs(ev.minCoeff()));
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev[i] < floor) ev[i] = floor;
        ev[i] = std::sqrt(std::max(ev[i], 0.0));
    }
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

double operator_norm(const Mat& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<Mat> svd(a);
    return svd.singularValues()[0];
}

EigRange symmetric_eig_range(const Mat& a) {
    Eigen::SelfAdjointEigenSolver<Mat> es(a, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("symmetric_eig_range: eigendecomposition failed");
    const Vec& ev = es.eigenvalues();
    return {ev.minCoeff(), ev.maxCoeff()};
}

double max_abs(const Mat& a) {
    if (a.size() == 0) return 0.0;
    return a.cwiseAbs().maxCoeff();
}

} // namespace hmt
