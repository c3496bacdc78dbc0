#pragma once

#include <Eigen/Dense>

#include "lenz/point_config.hpp"

namespace lenz {

/// Affine span of a point set: an anchor (the centroid) plus an orthonormal
/// basis of the direction space, obtained from an SVD of the centered points.
/// A singular value counts toward the rank when it exceeds
/// max(sigma_tol_abs, sigma_tol_rel * sigma_max).
struct AffineSpan {
    Eigen::VectorXd origin;  // centroid
    Eigen::MatrixXd basis;   // d x rank, orthonormal columns
    [[nodiscard]] Eigen::Index rank() const { return basis.cols(); }
};

[[nodiscard]] AffineSpan affine_span(const Eigen::MatrixXd& points,
                                     double sigma_tol_abs = 1e-9,
                                     double sigma_tol_rel = 1e-12);

/// A fitted k-sphere: the set {x in the affine flat (origin', basis) :
/// |x - center| = radius}, with center lying in the flat.  rank = dimension of
/// the flat (2 => circle, 3 => 2-sphere).
struct SphereFit {
    Eigen::VectorXd center;
    double radius = 0.0;
    double residual = 0.0;   // max over points of | |p - center| - radius |
    Eigen::MatrixXd basis;   // d x rank, orthonormal; spans directions of the flat
    [[nodiscard]] Eigen::Index rank() const { return basis.cols(); }
};

/// Least-squares sphere through a point set, restricted to the set's affine
/// span.  Algebraic (Coope-style) fit: linear in the center and in
/// radius^2 - |center|^2, so it needs no iteration and is exact for points
/// lying exactly on a sphere.  Throws DegenerateInput when the span has rank 0
/// or fewer points than rank + 1 (an underdetermined fit).
[[nodiscard]] SphereFit fit_sphere(const Eigen::MatrixXd& points,
                                   double sigma_tol_abs = 1e-9,
                                   double sigma_tol_rel = 1e-12);

/// Distance from a point to a fitted sphere (the in-flat ring deviation and
/// the out-of-flat offset combined orthogonally).
[[nodiscard]] double distance_to_sphere(const SphereFit& fit, const Eigen::VectorXd& q);

/// Orthogonality verdict for two point groups forming a cross-unit pair.
struct OrthogonalityReport {
    bool orthogonal = false;         // spans orthogonal and centers agree
    double max_cross_dot = 0.0;      // max |u . v| over basis pairs
    double center_gap = 0.0;         // distance between the two fitted centers
    double radius_identity_residual = 0.0;  // |r_a^2 + r_b^2 - 1|
    Eigen::VectorXd common_center;   // midpoint of the two fitted centers
};

/// Check that two groups of points lie on spheres in mutually orthogonal
/// flats around a common center, with radii satisfying r_a^2 + r_b^2 = 1
/// (the geometry that makes every cross pair a unit distance).  Each group
/// needs at least 3 points; throws InvalidInput otherwise.
[[nodiscard]] OrthogonalityReport check_orthogonal_bipartite(const Eigen::MatrixXd& group_a,
                                                             const Eigen::MatrixXd& group_b,
                                                             double tol = 1e-9);

} // namespace lenz
