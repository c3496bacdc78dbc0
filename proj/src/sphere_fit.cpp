#include "lenz/sphere_fit.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <string>

#include "lenz/errors.hpp"

namespace lenz {

AffineSpan affine_span(const Eigen::MatrixXd& points, double sigma_tol_abs,
                       double sigma_tol_rel) {
    if (points.cols() < 1)
        throw InvalidInput("affine_span: empty point set");
    AffineSpan span;
    span.origin = points.rowwise().mean();
    Eigen::MatrixXd centered = points.colwise() - span.origin;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinU);
    const auto& sigma = svd.singularValues();
    const double cut = std::max(sigma_tol_abs,
                                sigma.size() > 0 ? sigma_tol_rel * sigma(0) : 0.0);
    Eigen::Index rank = 0;
    while (rank < sigma.size() && sigma(rank) > cut) ++rank;
    span.basis = svd.matrixU().leftCols(rank);
    return span;
}

SphereFit fit_sphere(const Eigen::MatrixXd& points, double sigma_tol_abs,
                     double sigma_tol_rel) {
    const Eigen::Index n = points.cols();
    if (n < 2)
        throw InvalidInput("fit_sphere: need at least 2 points, got " + std::to_string(n));
    AffineSpan span = affine_span(points, sigma_tol_abs, sigma_tol_rel);
    const Eigen::Index k = span.rank();
    if (k == 0)
        throw DegenerateInput("fit_sphere: all points coincide");
    if (n < k + 1)  // k center coordinates + 1 radius term
        throw DegenerateInput("fit_sphere: " + std::to_string(n) +
                              " points underdetermine a sphere in a rank-" +
                              std::to_string(k) + " flat");

    // Work in span coordinates y_i = U^T (p_i - mu).  The algebraic model
    // |y|^2 = 2 b.y + gamma is linear in (b, gamma); solving it by least
    // squares gives center mu + U b and radius sqrt(gamma + |b|^2).
    Eigen::MatrixXd y = span.basis.transpose() * (points.colwise() - span.origin);
    Eigen::MatrixXd a(n, k + 1);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        a.row(i).head(k) = 2.0 * y.col(i).transpose();
        a(i, k) = 1.0;
        rhs(i) = y.col(i).squaredNorm();
    }
    Eigen::VectorXd sol = a.colPivHouseholderQr().solve(rhs);
    const Eigen::VectorXd b = sol.head(k);
    const double gamma = sol(k);
    const double radius_sq = gamma + b.squaredNorm();
    if (!(radius_sq > 0.0) || !std::isfinite(radius_sq))
        throw DegenerateInput("fit_sphere: degenerate algebraic solution (radius^2 = " +
                              std::to_string(radius_sq) + ")");

    SphereFit fit;
    fit.basis = span.basis;
    fit.center = span.origin + span.basis * b;
    fit.radius = std::sqrt(radius_sq);
    fit.residual = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        fit.residual = std::max(
            fit.residual, std::abs((points.col(i) - fit.center).norm() - fit.radius));
    return fit;
}

double distance_to_sphere(const SphereFit& fit, const Eigen::VectorXd& q) {
    const Eigen::VectorXd w = q - fit.center;
    const Eigen::VectorXd v = fit.basis.transpose() * w;   // in-flat component
    const double off_flat_sq = std::max(0.0, w.squaredNorm() - v.squaredNorm());
    const double ring = v.norm() - fit.radius;
    return std::sqrt(ring * ring + off_flat_sq);
}

OrthogonalityReport check_orthogonal_bipartite(const Eigen::MatrixXd& group_a,
                                               const Eigen::MatrixXd& group_b,
                                               double tol) {
    if (group_a.cols() < 3 || group_b.cols() < 3)
        throw InvalidInput("check_orthogonal_bipartite: each group needs >= 3 points");
    if (group_a.rows() != group_b.rows())
        throw InvalidInput("check_orthogonal_bipartite: dimension mismatch");

    const SphereFit fa = fit_sphere(group_a);
    const SphereFit fb = fit_sphere(group_b);

    OrthogonalityReport rep;
    rep.max_cross_dot = (fa.basis.transpose() * fb.basis).cwiseAbs().maxCoeff();
    rep.center_gap = (fa.center - fb.center).norm();
    rep.radius_identity_residual =
        std::abs(fa.radius * fa.radius + fb.radius * fb.radius - 1.0);
    rep.common_center = 0.5 * (fa.center + fb.center);
    rep.orthogonal = rep.max_cross_dot <= tol && rep.center_gap <= tol;
    return rep;
}

} // namespace lenz
