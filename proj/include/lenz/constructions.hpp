#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lenz/distance_graph.hpp"
#include "lenz/point_config.hpp"

namespace lenz {

// ---------------------------------------------------------------------------
// Frames: the structured skeleton behind an assembled configuration
// ---------------------------------------------------------------------------

/// One component of a frame: a circle (rank 2) or 2-sphere (rank 3) in a
/// coordinate flat, with the points assigned to it.
struct FrameComponent {
    enum class Kind { Circle, Sphere2 };
    Kind kind = Kind::Circle;
    double radius = 0.0;
    Eigen::MatrixXd basis;       // d x 2 or d x 3, orthonormal directions
    std::vector<int> members;    // column indices into the owning config
};

/// Mutually orthogonal circles / one optional 2-sphere around a common
/// center; cross-component radii satisfy r_i^2 + r_j^2 = 1 so that every
/// cross-component pair of points is at distance exactly 1.
struct LenzFrame {
    Eigen::VectorXd center;
    std::vector<FrameComponent> components;
};

/// Iteration record for constructions that solve for a radius numerically.
struct SolverStats {
    int grid_samples = 0;
    int bisection_iterations = 0;
    double radius = 0.0;
    double final_residual = 0.0;  // |target function| at the accepted radius
};

/// A generated configuration plus the count it was built to achieve and the
/// count it actually achieves (recounted independently via the distance
/// graph).  Generators throw ConstructionFailed instead of returning a report
/// whose a-posteriori validation failed, so expected == achieved on return.
struct ConstructionReport {
    PointConfig config;
    GraphKind kind = GraphKind::Unit;
    std::int64_t expected_count = 0;
    std::int64_t achieved_count = 0;
    LenzFrame frame;
    std::optional<SolverStats> solver;

    [[nodiscard]] bool match() const { return expected_count == achieved_count; }
};

// ---------------------------------------------------------------------------
// Planar / spherical gadgets (the building blocks)
// ---------------------------------------------------------------------------

/// m points on the circle of radius 1/sqrt(2) about the origin realizing the
/// maximum number of unit distances on that circle: floor(m/4) inscribed unit
/// squares plus m mod 4 consecutive vertices of one more square, each square
/// rotated against the previous ones.  The rotation offset starts at 1 radian
/// and is nudged (at most 100 times) until no cross-square distance comes
/// within 1e-6 of 0 or 1.  Unit count: m when 4 | m, else m - 1.  m >= 1.
[[nodiscard]] PointConfig squares_on_circle(int m);

/// Regular m-gon (m odd >= 3) scaled to diameter exactly 1, i.e. circumradius
/// 1 / (2 cos(pi/(2m))).  Its diameter graph is the m-cycle of longest chords.
[[nodiscard]] PointConfig star_polygon(int m);

/// m >= 2 points on a circle of radius R > 1/2 spanning a closed arc whose
/// endpoints are at distance exactly 1, all other pairs strictly shorter:
/// the arc of central angle 2*asin(1/(2R)) sampled uniformly.
[[nodiscard]] PointConfig arc_with_one_diameter(int m, double radius);

/// m points on a 2-sphere whose diameter graph has 2m - 2 edges (the maximum
/// for m >= 4, m != 5).  Even m: regular (m-1)-gon of diameter 1 plus an apex
/// above its center.  Odd m >= 7: a near-half-turn chain of unit chords on a
/// slightly supercritical circle, closed up by two reflected points whose
/// connecting chord is driven to length 1 by a grid-scan + bisection on the
/// circle radius.  Points are returned centered on their circumsphere.
/// Throws Unachievable for m == 5 and InvalidInput for m < 4.
[[nodiscard]] ConstructionReport sphere_diameter_config(int m);

/// m >= 3 points on a 2-sphere of radius s >= 1/sqrt(2) with exactly m
/// diameter pairs (the maximum for spheres this large).  Odd m: a regular
/// m-gon of diameter 1 on a small circle of the sphere.  Even m: a unit
/// triangle x, y, z on the sphere plus m - 3 points strictly inside the minor
/// arc, between y and z, of the locus of sphere points at distance 1 from x.
/// The result is validated (exact count, no pair beyond 1) before returning.
[[nodiscard]] PointConfig sphere_n_diameter_config(int m, double s);

/// Five points on a 2-sphere realizing seven diameters (eight is impossible):
/// the six-point apex construction with one rim vertex removed.
[[nodiscard]] PointConfig five_point_seven_diameter_fixture();

// ---------------------------------------------------------------------------
// Full-dimensional assemblies
// ---------------------------------------------------------------------------

/// Unit-distance maximizer in even dimension d >= 6: p = d/2 mutually
/// orthogonal circles of radius 1/sqrt(2), class sizes from
/// optimize_unit_partition_even, each class filled by squares_on_circle.
/// Achieves unit_formula_even(d, n).value unit pairs.  n >= 1.
[[nodiscard]] ConstructionReport lenz_even_unit(int d, int n);

/// Diameter maximizer in even dimension d >= 6: p orthogonal circles of
/// radius 1/sqrt(2), balanced class sizes, each class an arc with one
/// diameter.  Achieves t_p(n) + p diameter pairs.  n >= d.
[[nodiscard]] ConstructionReport lenz_even_diam(int d, int n);

/// Diameter maximizer in dimension 4: an n1-gon star polygon (n1 odd, from
/// optimize_diam_split_d4) on one circle and an arc with one diameter on the
/// orthogonal circle, radii r and sqrt(1 - r^2).  n >= 6.
[[nodiscard]] ConstructionReport lenz_d4_diam(int n);

/// Diameter maximizer in odd dimension d >= 7: p - 1 orthogonal circles plus
/// one 2-sphere component (pole + equator arc), p = (d-1)/2; class sizes are
/// the balanced partition with the sphere class rounded up.  Achieves
/// t_p(n) + ceil(n/p) + p - 1.  Requires n >= 3p so every class is usable.
[[nodiscard]] ConstructionReport lenz_odd_diam(int d, int n);

/// Strategy for the dimension-5 diameter maximizer.
enum class D5Strategy {
    Auto,         // StarPolygon when n % 4 != 0, else SphereHeavy
    SphereHeavy,  // 2m-2-diameter sphere component + arc circle
    StarPolygon,  // m-diameter sphere component + odd star polygon circle
};

/// Diameter maximizer in dimension 5, achieving t_2(n) + n.  n >= 6; n == 8
/// is Unachievable (both strategies degenerate).  StarPolygon requires
/// n % 4 != 0 (one of floor(n/2), ceil(n/2) must be odd).
[[nodiscard]] ConstructionReport lenz_d5_diam(int n, D5Strategy strategy = D5Strategy::Auto);

// ---------------------------------------------------------------------------
// Weak frame (dimension 5, diameter case): two spheres, two circles
// ---------------------------------------------------------------------------

/// The relaxed two-component skeleton in R^5 = V0 + V1 + V2 (V0 a line, V1
/// and V2 orthogonal planes): sphere S1 of radius r1 about the origin o in
/// V0 + V1, and the locus S2 of points at distance 1 from the circle
/// C1 = S1 ∩ {x0 = r}, which is the sphere of radius s2 = sqrt(r2^2 + r^2)
/// about o' = r e0 in V0 + V2, where r2 = sqrt(1 - r1^2) and
/// s1 = sqrt(r1^2 - r^2) is C1's radius about o'.  r = 0 recovers the strict
/// frame.  Requires 0 < r1 < 1 and 0 <= r < r1.
struct WeakLenzFrameD5 {
    double r1 = 0, r2 = 0, r = 0, s1 = 0, s2 = 0;
    Eigen::VectorXd o;        // origin of R^5
    Eigen::VectorXd o_prime;  // r * e0
    Eigen::VectorXd pole1_plus, pole1_minus;  // V0 ∩ S1 = {±r1 e0}
    Eigen::VectorXd pole2_plus, pole2_minus;  // V0 ∩ S2 = {(r ± s2) e0}
};

[[nodiscard]] WeakLenzFrameD5 weak_lenz_frame_d5(double r1, double r);

/// Deterministic sample points for spot checks (5 x k matrices).
[[nodiscard]] Eigen::MatrixXd weak_frame_sample_c1(const WeakLenzFrameD5& frame, int k);
[[nodiscard]] Eigen::MatrixXd weak_frame_sample_c2(const WeakLenzFrameD5& frame, int k);
[[nodiscard]] Eigen::MatrixXd weak_frame_sample_sigma1(const WeakLenzFrameD5& frame, int k);
[[nodiscard]] Eigen::MatrixXd weak_frame_sample_sigma2(const WeakLenzFrameD5& frame, int k);

// ---------------------------------------------------------------------------
// Deterministic randomization helpers
// ---------------------------------------------------------------------------

/// Displace every point by an independent vector of norm <= magnitude.
/// Bit-reproducible across platforms for a fixed seed (the underlying 64-bit
/// generator sequence is fully specified and doubles are derived from raw
/// bits, not from distribution objects).
[[nodiscard]] PointConfig perturb(const PointConfig& config, double magnitude, std::uint64_t seed);

/// Haar-ish random proper rotation: QR factor of a seeded Gaussian matrix
/// with the sign ambiguity fixed, determinant forced to +1.
[[nodiscard]] Eigen::MatrixXd random_rotation(int dim, std::uint64_t seed);

} // namespace lenz
