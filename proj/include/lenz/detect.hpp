#pragma once

#include <cstdint>
#include <vector>

#include "lenz/point_config.hpp"
#include "lenz/sphere_fit.hpp"

namespace lenz {

/// One recovered class: the member indices plus the circle/2-sphere fitted
/// through them.
struct DetectedClass {
    std::vector<int> members;  // ascending point indices
    SphereFit fit;             // fit.rank() == 2 (circle) or 3 (2-sphere)
};

/// Structure recovered from an unlabeled point cloud.
struct DetectedStructure {
    std::vector<DetectedClass> classes;   // extraction order (largest first)
    std::vector<int> residual;            // S_0: points in no class, ascending
    Eigen::VectorXd common_center;        // meaningful when classes is nonempty
    bool pairwise_orthogonal = false;     // spans orthogonal, centers agree
    bool radius_identity_ok = false;      // all pairs satisfy r_i^2 + r_j^2 ~= 1
    double epsilon_used = 0.0;
};

/// Recover an orthogonal circles-and-sphere skeleton from a raw point cloud.
///
/// Greedy RANSAC: per extraction round, 256 seeded trials each fit a circle
/// through 3 sampled points and a 2-sphere through 4; the candidate with the
/// most epsilon-inliers (ties: earliest trial) is refit and extracted.  A
/// circle class needs >= 4 members, a sphere class >= 5.  Leftover points are
/// then absorbed where possible, including upgrading a circle class to the
/// 2-sphere through it and an off-plane leftover.  Classes must finally share
/// a common center and be mutually orthogonal within epsilon; classes that
/// break consistency fall back to the residual, as do their points.
/// Deterministic for fixed (input, epsilon, seed).
[[nodiscard]] DetectedStructure detect_lenz(const PointConfig& config,
                                            double epsilon = 1e-6,
                                            std::uint64_t seed = 0);

} // namespace lenz
