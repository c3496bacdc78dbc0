#pragma once

#include <Eigen/Dense>

#include <map>
#include <string>

namespace lenz {

/// A finite point set in d-dimensional Euclidean space.
///
/// Points are stored as the columns of a dense d x n matrix, so whole-set
/// transforms are single Eigen expressions (rotation: Q * points; translation:
/// points.colwise() += t).  `meta` carries free-form provenance written by the
/// generators (generator name, parameters, class labels) and survives
/// serialization round trips.
struct PointConfig {
    Eigen::MatrixXd points;                       // d x n, one point per column
    std::map<std::string, std::string> meta;      // ordered => deterministic output

    [[nodiscard]] Eigen::Index dim() const { return points.rows(); }
    [[nodiscard]] Eigen::Index size() const { return points.cols(); }
};

/// Absolute + relative slack used when comparing a pairwise distance against a
/// target length L: a pair counts when |dist - L| <= eps_abs + eps_rel * L.
/// Comparisons are made on distances, not squared distances, so the tolerance
/// has a uniform geometric meaning at every scale.
struct TolerancePolicy {
    double eps_abs = 1e-9;
    double eps_rel = 1e-12;

    [[nodiscard]] double slack(double target_length) const {
        return eps_abs + eps_rel * target_length;
    }
    [[nodiscard]] bool matches(double dist, double target_length) const {
        return std::abs(dist - target_length) <= slack(target_length);
    }
};

} // namespace lenz
