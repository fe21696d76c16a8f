#pragma once

// Least-squares line and circle fits used as independent oracles for
// projected arcs.

#include <Eigen/Dense>
#include <vector>

#include "fourdlo/quat4.hpp"

namespace fit {

struct Fit {
    bool line = false;
    double max_deviation = 0;
    double radius = 0;
    Eigen::Vector3d center = Eigen::Vector3d::Zero();
};

inline Eigen::MatrixXd to_matrix(const std::vector<fourdlo::Vec3>& pts) {
    Eigen::MatrixXd m(pts.size(), 3);
    for (std::size_t i = 0; i < pts.size(); ++i) m.row(static_cast<Eigen::Index>(i)) << pts[i].x, pts[i].y, pts[i].z;
    return m;
}

/// Best line through the points (principal direction) and its max distance.
inline Fit fit_line(const std::vector<fourdlo::Vec3>& pts) {
    const Eigen::MatrixXd m = to_matrix(pts);
    const Eigen::RowVector3d mean = m.colwise().mean();
    const Eigen::MatrixXd c = m.rowwise() - mean;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeThinV);
    const Eigen::Vector3d dir = svd.matrixV().col(0);
    Fit f;
    f.line = true;
    for (Eigen::Index i = 0; i < c.rows(); ++i) {
        const Eigen::Vector3d v = c.row(i).transpose();
        f.max_deviation = std::max(f.max_deviation, (v - v.dot(dir) * dir).norm());
    }
    return f;
}

/// Plane by SVD, then the algebraic circle fit x^2 + y^2 + D x + E y + F = 0
/// in plane coordinates; deviation covers both in-plane and off-plane error.
inline Fit fit_circle(const std::vector<fourdlo::Vec3>& pts) {
    const Eigen::MatrixXd m = to_matrix(pts);
    const Eigen::RowVector3d mean = m.colwise().mean();
    const Eigen::MatrixXd c = m.rowwise() - mean;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeThinV);
    const Eigen::Vector3d e1 = svd.matrixV().col(0), e2 = svd.matrixV().col(1), nrm = svd.matrixV().col(2);
    const Eigen::Index n = c.rows();
    Eigen::MatrixXd a(n, 3);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Vector3d v = c.row(i).transpose();
        const double x = v.dot(e1), y = v.dot(e2);
        a.row(i) << x, y, 1;
        b(i) = -(x * x + y * y);
    }
    const Eigen::Vector3d sol = a.colPivHouseholderQr().solve(b);
    const double cx = -sol(0) / 2, cy = -sol(1) / 2;
    Fit f;
    f.radius = std::sqrt(cx * cx + cy * cy - sol(2));
    f.center = mean.transpose() + cx * e1 + cy * e2;
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Vector3d v = m.row(i).transpose() - f.center;
        const double off = v.dot(nrm);
        const double in = (v - off * nrm).norm() - f.radius;
        f.max_deviation = std::max(f.max_deviation, std::hypot(off, in));
    }
    return f;
}

/// Line if the points are collinear to within `tol`, otherwise a circle.
inline Fit fit_circle_or_line(const std::vector<fourdlo::Vec3>& pts, double tol = 1e-9) {
    Fit l = fit_line(pts);
    if (l.max_deviation < tol) return l;
    return fit_circle(pts);
}

}  // namespace fit
