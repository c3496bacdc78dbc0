#include "lenz/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "lenz/errors.hpp"
#include "lenz/formulas.hpp"
#include "rng_util.hpp"

namespace lenz {

namespace {

constexpr double kPi = std::numbers::pi;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

Eigen::Vector2d on_circle(double radius, double angle) {
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

// Count pairs whose distance is within tol of `target` (independent of the
// graph machinery on purpose: generators must not validate themselves with
// the same code paths the tests use to validate them).
std::int64_t count_pairs_at(const Eigen::MatrixXd& pts, double target, double tol) {
    std::int64_t cnt = 0;
    for (Eigen::Index i = 0; i + 1 < pts.cols(); ++i)
        for (Eigen::Index j = i + 1; j < pts.cols(); ++j)
            if (std::abs((pts.col(i) - pts.col(j)).norm() - target) <= tol) ++cnt;
    return cnt;
}

double max_pair_distance(const Eigen::MatrixXd& pts) {
    double best = 0.0;
    for (Eigen::Index i = 0; i + 1 < pts.cols(); ++i)
        for (Eigen::Index j = i + 1; j < pts.cols(); ++j)
            best = std::max(best, (pts.col(i) - pts.col(j)).norm());
    return best;
}

} // namespace

// ---------------------------------------------------------------------------
// squares_on_circle
// ---------------------------------------------------------------------------

PointConfig squares_on_circle(int m) {
    if (m < 1) throw InvalidInput("squares_on_circle: m must be >= 1, got " + std::to_string(m));
    const int full = m / 4, extra = m % 4;
    const int squares = full + (extra > 0 ? 1 : 0);

    double offset = 1.0;  // radians between consecutive squares
    for (int attempt = 0; attempt <= 100; ++attempt, offset += 1e-3) {
        Eigen::MatrixXd pts(2, m);
        std::vector<int> square_of(m);
        int col = 0;
        for (int j = 0; j < squares; ++j) {
            const int verts = (j < full) ? 4 : extra;
            for (int k = 0; k < verts; ++k, ++col) {
                pts.col(col) = on_circle(kInvSqrt2, j * offset + k * kPi / 2.0);
                square_of[col] = j;
            }
        }
        // a-posteriori: no cross-square pair may fall near distance 1 (which
        // would inflate the count) or near 0 (coincident squares)
        bool clean = true;
        for (int i = 0; clean && i + 1 < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                if (square_of[i] == square_of[j]) continue;
                const double d = (pts.col(i) - pts.col(j)).norm();
                if (std::abs(d - 1.0) < 1e-6 || d < 1e-6) { clean = false; break; }
            }
        if (!clean) continue;

        PointConfig out;
        out.points = std::move(pts);
        out.meta["generator"] = "squares_on_circle";
        out.meta["kind"] = "unit";
        out.meta["m"] = std::to_string(m);
        out.meta["rotation_offset"] = fmt(offset);
        return out;
    }
    throw ConstructionFailed("squares_on_circle: no clean rotation offset found for m = " +
                             std::to_string(m) + " after 101 attempts");
}

// ---------------------------------------------------------------------------
// star_polygon
// ---------------------------------------------------------------------------

PointConfig star_polygon(int m) {
    if (m < 3 || m % 2 == 0)
        throw InvalidInput("star_polygon: m must be odd and >= 3, got " + std::to_string(m));
    const double radius = 1.0 / (2.0 * std::cos(kPi / (2.0 * m)));
    PointConfig out;
    out.points.resize(2, m);
    for (int k = 0; k < m; ++k)
        out.points.col(k) = on_circle(radius, 2.0 * kPi * k / m);
    out.meta["generator"] = "star_polygon";
    out.meta["kind"] = "diam";
    out.meta["m"] = std::to_string(m);
    out.meta["radius"] = fmt(radius);
    return out;
}

// ---------------------------------------------------------------------------
// arc_with_one_diameter
// ---------------------------------------------------------------------------

PointConfig arc_with_one_diameter(int m, double radius) {
    if (m < 2)
        throw InvalidInput("arc_with_one_diameter: m must be >= 2, got " + std::to_string(m));
    if (!(radius > 0.5))
        throw InvalidInput("arc_with_one_diameter: radius must exceed 1/2, got " + fmt(radius));
    const double gamma = 2.0 * std::asin(1.0 / (2.0 * radius));
    PointConfig out;
    out.points.resize(2, m);
    for (int k = 0; k < m; ++k) {
        const double theta = -gamma / 2.0 + gamma * k / (m - 1);
        out.points.col(k) = on_circle(radius, theta);
    }
    out.meta["generator"] = "arc_with_one_diameter";
    out.meta["kind"] = "diam";
    out.meta["m"] = std::to_string(m);
    out.meta["radius"] = fmt(radius);
    return out;
}

// ---------------------------------------------------------------------------
// sphere_diameter_config
// ---------------------------------------------------------------------------

namespace {

// Reflect `p` across the line through `o` toward `a` (2D).
Eigen::Vector2d reflect_across_line(const Eigen::Vector2d& p, const Eigen::Vector2d& o,
                                    const Eigen::Vector2d& a) {
    const Eigen::Vector2d u = (a - o).normalized();
    const Eigen::Vector2d v = p - o;
    return o + 2.0 * v.dot(u) * u - v;
}

struct OddSphereLayout {
    Eigen::MatrixXd pts;       // 3 x m, before recentring
    Eigen::Vector3d center;    // circumsphere center
    double closing_gap = 0.0;  // |x_{m-1} x_m| - 1, the root target
    double cons_a = 0.0;       // |x_{m-2} x_{m-1}|, must end up <= 1
    double cons_b = 0.0;       // |x_{m-2} x_m|, must end up <= 1
};

// Lay out the odd-m configuration at ring radius r: a chain of m-3 unit
// chords on the horizontal circle of radius r, a top point above the center,
// and two points obtained by reflecting the top across the two axes (in the
// xz-plane) through the sphere center and the chord midpoints a, b.  Those
// reflections are exactly the second intersection points of the unit spheres
// around the chain ends with the vertical great circle, so each carries two
// unit distances to the chain by symmetry.
OddSphereLayout odd_sphere_layout(int m, double r) {
    OddSphereLayout lay;
    const double alpha = 2.0 * std::asin(1.0 / (2.0 * r));
    const int ring = m - 3;
    lay.pts.resize(3, m);
    for (int i = 1; i <= ring; ++i) {
        const double phi = alpha * (i - (m - 2) / 2.0);
        lay.pts.col(i - 1) = Eigen::Vector3d(r * std::cos(phi), r * std::sin(phi), 0.0);
    }
    const double zc = std::sqrt(1.0 - r * r);
    lay.pts.col(m - 3) = Eigen::Vector3d(0.0, 0.0, zc);  // top: unit from every ring point
    const double c = (1.0 - 2.0 * r * r) / (2.0 * zc);   // center height from |top| = sphere radius
    lay.center = Eigen::Vector3d(0.0, 0.0, c);

    const double theta_a = alpha * (m - 4) / 2.0;  // midpoint direction of chord x_1 x_{m-3}
    const double theta_b = alpha * (m - 6) / 2.0;  // midpoint direction of chord x_2 x_{m-4}
    const Eigen::Vector2d o2(0.0, c), top2(0.0, zc);
    const Eigen::Vector2d qa = reflect_across_line(top2, o2, {r * std::cos(theta_a), 0.0});
    const Eigen::Vector2d qb = reflect_across_line(top2, o2, {r * std::cos(theta_b), 0.0});
    lay.pts.col(m - 2) = Eigen::Vector3d(qa.x(), 0.0, qa.y());
    lay.pts.col(m - 1) = Eigen::Vector3d(qb.x(), 0.0, qb.y());

    lay.closing_gap = (lay.pts.col(m - 2) - lay.pts.col(m - 1)).norm() - 1.0;
    lay.cons_a = (lay.pts.col(m - 3) - lay.pts.col(m - 2)).norm();
    lay.cons_b = (lay.pts.col(m - 3) - lay.pts.col(m - 1)).norm();
    return lay;
}

ConstructionReport odd_sphere_diameter(int m) {
    // Scan (1/2, r0) for the first sign change of the closing gap where the
    // two <= 1 side constraints hold, then bisect the bracket down to 1e-14.
    const double r0 = 1.0 / (2.0 * std::cos(kPi / (2.0 * (m - 4))));
    const double lo = 0.5 + 1e-6, hi = r0 - 1e-6;
    constexpr int kGrid = 512;
    double a = 0.0, b = 0.0, fa = 0.0;
    bool bracketed = false;
    double prev_r = lo, prev_f = odd_sphere_layout(m, lo).closing_gap;
    for (int i = 1; i < kGrid; ++i) {
        const double r = lo + (hi - lo) * i / (kGrid - 1);
        const OddSphereLayout lay = odd_sphere_layout(m, r);
        if (prev_f <= 0.0 && lay.closing_gap >= 0.0 &&
            std::max(lay.cons_a, lay.cons_b) <= 1.0 + 1e-3) {
            a = prev_r; b = r; fa = prev_f;
            bracketed = true;
            break;
        }
        prev_r = r;
        prev_f = lay.closing_gap;
    }
    if (!bracketed)
        throw ConstructionFailed(
            "sphere_diameter_config: no admissible sign change of the closing gap over " +
            std::to_string(kGrid) + " samples of (" + fmt(lo) + ", " + fmt(hi) +
            ") for m = " + std::to_string(m));

    int iters = 0;
    while (b - a > 1e-14 && iters < 200) {
        const double mid = 0.5 * (a + b);
        const double fm = odd_sphere_layout(m, mid).closing_gap;
        if (fa * fm <= 0.0) {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
        ++iters;
    }
    // keep whichever endpoint lands closer to a zero gap
    const double root =
        std::abs(odd_sphere_layout(m, a).closing_gap) <
                std::abs(odd_sphere_layout(m, b).closing_gap)
            ? a
            : b;
    OddSphereLayout lay = odd_sphere_layout(m, root);
    if (std::max(lay.cons_a, lay.cons_b) > 1.0 + 1e-9)
        throw ConstructionFailed("sphere_diameter_config: side constraint exceeds 1 at the root (m = " +
                                 std::to_string(m) + ")");

    ConstructionReport rep;
    rep.kind = GraphKind::Diameter;
    rep.expected_count = 2 * m - 2;
    rep.config.points = lay.pts.colwise() - lay.center;  // circumcenter -> origin
    rep.config.meta["generator"] = "sphere_diameter_config";
    rep.config.meta["kind"] = "diam";
    rep.config.meta["m"] = std::to_string(m);
    rep.config.meta["ring_radius"] = fmt(root);

    SolverStats stats;
    stats.grid_samples = kGrid;
    stats.bisection_iterations = iters;
    stats.radius = root;
    stats.final_residual = std::abs(lay.closing_gap);
    rep.solver = stats;
    return rep;
}

ConstructionReport even_sphere_diameter(int m) {
    const int ring = m - 1;  // odd
    const double radius = 1.0 / (2.0 * std::cos(kPi / (2.0 * ring)));
    Eigen::MatrixXd pts(3, m);
    for (int k = 0; k < ring; ++k) {
        const double theta = 2.0 * kPi * k / ring;
        pts.col(k) = Eigen::Vector3d(radius * std::cos(theta), radius * std::sin(theta), 0.0);
    }
    const double apex_z = std::sqrt(1.0 - radius * radius);
    pts.col(ring) = Eigen::Vector3d(0.0, 0.0, apex_z);
    // circumsphere center sits on the axis where ring and apex are equidistant
    const double c = (apex_z * apex_z - radius * radius) / (2.0 * apex_z);
    pts.row(2).array() -= c;

    ConstructionReport rep;
    rep.kind = GraphKind::Diameter;
    rep.expected_count = 2 * m - 2;
    rep.config.points = std::move(pts);
    rep.config.meta["generator"] = "sphere_diameter_config";
    rep.config.meta["kind"] = "diam";
    rep.config.meta["m"] = std::to_string(m);
    rep.config.meta["ring_radius"] = fmt(radius);
    return rep;
}

} // namespace

ConstructionReport sphere_diameter_config(int m) {
    if (m < 4)
        throw InvalidInput("sphere_diameter_config: m must be >= 4, got " + std::to_string(m));
    if (m == 5)
        throw Unachievable("sphere_diameter_config: 5 points on a 2-sphere admit at most 7 "
                           "diameter pairs, not 2*5 - 2 = 8");

    ConstructionReport rep = (m % 2 == 0) ? even_sphere_diameter(m) : odd_sphere_diameter(m);
    rep.achieved_count = count_pairs_at(rep.config.points, 1.0, 1e-9);
    const double diam = max_pair_distance(rep.config.points);
    if (rep.achieved_count != rep.expected_count || diam > 1.0 + 1e-9)
        throw ConstructionFailed("sphere_diameter_config: validation failed for m = " +
                                 std::to_string(m) + " (achieved " +
                                 std::to_string(rep.achieved_count) + ", expected " +
                                 std::to_string(rep.expected_count) + ", max distance " +
                                 fmt(diam) + ")");

    FrameComponent comp;
    comp.kind = FrameComponent::Kind::Sphere2;
    comp.radius = rep.config.points.col(0).norm();
    comp.basis = Eigen::MatrixXd::Identity(3, 3);
    comp.members.resize(m);
    for (int i = 0; i < m; ++i) comp.members[i] = i;
    rep.frame.center = Eigen::VectorXd::Zero(3);
    rep.frame.components.push_back(std::move(comp));
    return rep;
}

// ---------------------------------------------------------------------------
// sphere_n_diameter_config
// ---------------------------------------------------------------------------

PointConfig sphere_n_diameter_config(int m, double s) {
    if (m < 3)
        throw InvalidInput("sphere_n_diameter_config: m must be >= 3, got " + std::to_string(m));
    if (!(s >= kInvSqrt2 - 1e-12))
        throw InvalidInput("sphere_n_diameter_config: sphere radius must be >= 1/sqrt(2), got " +
                           fmt(s));

    Eigen::MatrixXd pts(3, m);
    if (m % 2 == 1) {
        // regular m-gon of diameter 1 on a horizontal small circle
        const double rho = 1.0 / (2.0 * std::cos(kPi / (2.0 * m)));
        const double h = std::sqrt(s * s - rho * rho);
        for (int k = 0; k < m; ++k) {
            const double theta = 2.0 * kPi * k / m;
            pts.col(k) = Eigen::Vector3d(rho * std::cos(theta), rho * std::sin(theta), h);
        }
    } else {
        // unit triangle x, y, z on the sphere; fill the minor y..z arc of the
        // circle L_x = {q on sphere : |q - x| = 1} with m - 3 interior points
        const double rt = 1.0 / std::sqrt(3.0);
        const double ht = std::sqrt(s * s - 1.0 / 3.0);
        for (int k = 0; k < 3; ++k) {
            const double theta = 2.0 * kPi * k / 3.0;
            pts.col(k) = Eigen::Vector3d(rt * std::cos(theta), rt * std::sin(theta), ht);
        }
        const Eigen::Vector3d xhat = pts.col(0).normalized();
        const double tx = (s * s - 0.5) / s;             // height of L_x's plane along xhat
        const Eigen::Vector3d cx = tx * xhat;            // center of L_x
        const double rx = std::sqrt(s * s - tx * tx);    // radius of L_x
        Eigen::Vector3d ref = std::abs(xhat.z()) < 0.9 ? Eigen::Vector3d::UnitZ()
                                                       : Eigen::Vector3d::UnitX();
        const Eigen::Vector3d u = xhat.cross(ref).normalized();
        const Eigen::Vector3d v = xhat.cross(u).normalized();
        auto angle_on_lx = [&](const Eigen::Vector3d& q) {
            const Eigen::Vector3d w = q - cx;
            return std::atan2(w.dot(v), w.dot(u));
        };
        const double ay = angle_on_lx(pts.col(1));
        double delta = angle_on_lx(pts.col(2)) - ay;
        while (delta > kPi) delta -= 2.0 * kPi;
        while (delta < -kPi) delta += 2.0 * kPi;
        for (int j = 1; j <= m - 3; ++j) {
            const double theta = ay + delta * j / (m - 2);
            pts.col(2 + j) = cx + rx * (std::cos(theta) * u + std::sin(theta) * v);
        }
    }

    // mandatory validation: exactly m unit pairs, none longer, all on the sphere
    const std::int64_t pairs = count_pairs_at(pts, 1.0, 1e-9);
    const double diam = max_pair_distance(pts);
    double sph_err = 0.0;
    for (int i = 0; i < m; ++i)
        sph_err = std::max(sph_err, std::abs(pts.col(i).norm() - s));
    if (pairs != m || diam > 1.0 + 1e-9 || sph_err > 1e-9)
        throw ConstructionFailed("sphere_n_diameter_config: validation failed for m = " +
                                 std::to_string(m) + ", s = " + fmt(s) + " (pairs " +
                                 std::to_string(pairs) + ", max distance " + fmt(diam) +
                                 ", sphere error " + fmt(sph_err) + ")");

    PointConfig out;
    out.points = std::move(pts);
    out.meta["generator"] = "sphere_n_diameter_config";
    out.meta["kind"] = "diam";
    out.meta["m"] = std::to_string(m);
    out.meta["radius"] = fmt(s);
    return out;
}

// ---------------------------------------------------------------------------
// five_point_seven_diameter_fixture
// ---------------------------------------------------------------------------

PointConfig five_point_seven_diameter_fixture() {
    // six-point maximizer (pentagon ring + apex) minus one ring vertex:
    // the ring path keeps 3 of its 5 unit chords, the apex keeps 4
    const ConstructionReport six = sphere_diameter_config(6);
    PointConfig out;
    out.points.resize(3, 5);
    int col = 0;
    for (int i = 0; i < 6; ++i) {
        if (i == 4) continue;  // drop one rim vertex (ring is columns 0..4)
        out.points.col(col++) = six.config.points.col(i);
    }
    out.meta["generator"] = "five_point_seven_diameter_fixture";
    out.meta["kind"] = "diam";
    out.meta["m"] = "5";
    return out;
}

// ---------------------------------------------------------------------------
// embedding helpers for full-dimensional assemblies
// ---------------------------------------------------------------------------

namespace {

// Write `low` (2 x k or 3 x k) into rows [row0, row0 + rows) of a d x n
// zero-padded block of columns [col0, col0 + k).
void embed_block(Eigen::MatrixXd& target, const Eigen::MatrixXd& low, int row0, int col0) {
    target.block(row0, col0, low.rows(), low.cols()) = low;
}

FrameComponent make_component(FrameComponent::Kind kind, double radius, int dim, int row0,
                              int rank, int col0, int count) {
    FrameComponent comp;
    comp.kind = kind;
    comp.radius = radius;
    comp.basis = Eigen::MatrixXd::Zero(dim, rank);
    for (int j = 0; j < rank; ++j) comp.basis(row0 + j, j) = 1.0;
    comp.members.resize(count);
    for (int i = 0; i < count; ++i) comp.members[i] = col0 + i;
    return comp;
}

std::string classes_string(const std::vector<int>& class_of) {
    std::string s;
    for (std::size_t i = 0; i < class_of.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(class_of[i]);
    }
    return s;
}

std::string plan_string(const std::vector<std::int64_t>& sizes) {
    std::string s;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(sizes[i]);
    }
    return s;
}

void finalize_assembly(ConstructionReport& rep, double unit_tol) {
    const std::vector<FrameComponent>& comps = rep.frame.components;
    std::vector<int> class_of(rep.config.size(), -1);
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (int idx : comps[c].members) class_of[idx] = static_cast<int>(c);
    rep.config.meta["classes"] = classes_string(class_of);

    rep.achieved_count = count_pairs_at(rep.config.points, 1.0, unit_tol);
    if (rep.kind == GraphKind::Diameter) {
        const double diam = max_pair_distance(rep.config.points);
        if (diam > 1.0 + 1e-9)
            throw ConstructionFailed(rep.config.meta["generator"] +
                                     ": max pairwise distance " + fmt(diam) + " exceeds 1");
    }
    if (rep.achieved_count != rep.expected_count)
        throw ConstructionFailed(rep.config.meta["generator"] + ": achieved " +
                                 std::to_string(rep.achieved_count) + " pairs, expected " +
                                 std::to_string(rep.expected_count));
}

} // namespace

// ---------------------------------------------------------------------------
// lenz_even_unit
// ---------------------------------------------------------------------------

ConstructionReport lenz_even_unit(int d, int n) {
    if (d < 6 || d % 2 != 0)
        throw InvalidInput("lenz_even_unit: d must be even and >= 6, got " + std::to_string(d));
    if (n < 1)
        throw InvalidInput("lenz_even_unit: n must be >= 1, got " + std::to_string(n));
    const int p = d / 2;
    const PartitionPlan plan = optimize_unit_partition_even(d, n);

    ConstructionReport rep;
    rep.kind = GraphKind::Unit;
    rep.expected_count = plan.value;
    rep.config.points = Eigen::MatrixXd::Zero(d, n);
    rep.frame.center = Eigen::VectorXd::Zero(d);

    int col = 0;
    for (int c = 0; c < p; ++c) {
        const int size = static_cast<int>(plan.sizes[c]);
        if (size == 0) continue;
        const PointConfig circle = squares_on_circle(size);
        embed_block(rep.config.points, circle.points, 2 * c, col);
        rep.frame.components.push_back(
            make_component(FrameComponent::Kind::Circle, kInvSqrt2, d, 2 * c, 2, col, size));
        col += size;
    }

    rep.config.meta["generator"] = "lenz_even_unit";
    rep.config.meta["kind"] = "unit";
    rep.config.meta["d"] = std::to_string(d);
    rep.config.meta["n"] = std::to_string(n);
    rep.config.meta["plan"] = plan_string(plan.sizes);
    finalize_assembly(rep, 1e-9);
    return rep;
}

// ---------------------------------------------------------------------------
// lenz_even_diam
// ---------------------------------------------------------------------------

ConstructionReport lenz_even_diam(int d, int n) {
    if (d < 6 || d % 2 != 0)
        throw InvalidInput("lenz_even_diam: d must be even and >= 6, got " + std::to_string(d));
    const int p = d / 2;
    if (n < d)
        throw InvalidInput("lenz_even_diam: n must be >= d so every circle holds a diameter "
                           "pair, got n = " + std::to_string(n));

    ConstructionReport rep;
    rep.kind = GraphKind::Diameter;
    rep.expected_count = turan_edges(p, n) + p;
    rep.config.points = Eigen::MatrixXd::Zero(d, n);
    rep.frame.center = Eigen::VectorXd::Zero(d);

    // balanced classes, ascending
    std::vector<int> sizes(p, n / p);
    for (int i = p - (n % p); i < p; ++i) ++sizes[i];
    int col = 0;
    for (int c = 0; c < p; ++c) {
        const PointConfig arc = arc_with_one_diameter(sizes[c], kInvSqrt2);
        embed_block(rep.config.points, arc.points, 2 * c, col);
        rep.frame.components.push_back(
            make_component(FrameComponent::Kind::Circle, kInvSqrt2, d, 2 * c, 2, col, sizes[c]));
        col += sizes[c];
    }

    rep.config.meta["generator"] = "lenz_even_diam";
    rep.config.meta["kind"] = "diam";
    rep.config.meta["d"] = std::to_string(d);
    rep.config.meta["n"] = std::to_string(n);
    finalize_assembly(rep, 1e-9);
    return rep;
}

// ---------------------------------------------------------------------------
// lenz_d4_diam
// ---------------------------------------------------------------------------

ConstructionReport lenz_d4_diam(int n) {
    if (n < 6)
        throw InvalidInput("lenz_d4_diam: n must be >= 6, got " + std::to_string(n));
    const DiamSplitD4 split = optimize_diam_split_d4(n);
    // the smallest optimal n1 is always odd; the star polygon needs that
    if (split.n1 % 2 != 1)
        throw ConstructionFailed("lenz_d4_diam: optimizer returned even n1 = " +
                                 std::to_string(split.n1));

    const int n1 = static_cast<int>(split.n1), n2 = static_cast<int>(split.n2);
    const PointConfig star = star_polygon(n1);  // circumradius r1 < 1/sqrt(2) by shape
    const double r1 = 1.0 / (2.0 * std::cos(kPi / (2.0 * n1)));
    const double r2 = std::sqrt(1.0 - r1 * r1);
    const PointConfig arc = arc_with_one_diameter(n2, r2);

    ConstructionReport rep;
    rep.kind = GraphKind::Diameter;
    rep.expected_count = split.value;
    rep.config.points = Eigen::MatrixXd::Zero(4, n);
    rep.frame.center = Eigen::VectorXd::Zero(4);
    embed_block(rep.config.points, star.points, 0, 0);
    embed_block(rep.config.points, arc.points, 2, n1);
    rep.frame.components.push_back(make_component(FrameComponent::Kind::Circle, r1, 4, 0, 2, 0, n1));
    rep.frame.components.push_back(make_component(FrameComponent::Kind::Circle, r2, 4, 2, 2, n1, n2));

    rep.config.meta["generator"] = "lenz_d4_diam";
    rep.config.meta["kind"] = "diam";
    rep.config.meta["d"] = "4";
    rep.config.meta["n"] = std::to_string(n);
    rep.config.meta["n1"] = std::to_string(n1);
    rep.config.meta["n2"] = std::to_string(n2);
    finalize_assembly(rep, 1e-9);
    return rep;
}

// ---------------------------------------------------------------------------
// lenz_odd_diam
// ---------------------------------------------------------------------------

ConstructionReport lenz_odd_diam(int d, int n) {
    if (d < 7 || d % 2 != 1)
        throw InvalidInput("lenz_odd_diam: d must be odd and >= 7, got " + std::to_string(d));
    const int p = (d - 1) / 2;
    if (n < 3 * p)
        throw InvalidInput("lenz_odd_diam: n must be >= 3p = " + std::to_string(3 * p) +
                           " so the sphere class can hold a pole and an arc, got " +
                           std::to_string(n));

    // the sphere component takes one ceil(n/p)-sized class of the balanced
    // partition; the circles take the rest, ascending
    const int q = n / p, s = n % p;
    const int sphere_size = q + (s > 0 ? 1 : 0);
    std::vector<int> circle_sizes;
    if (s > 0) {
        circle_sizes.assign(p - s, q);
        circle_sizes.insert(circle_sizes.end(), s - 1, q + 1);
    } else {
        circle_sizes.assign(p - 1, q);
    }

    ConstructionReport rep;
    rep.kind = GraphKind::Diameter;
    rep.expected_count = diam_formula(d, n).value;
    rep.config.points = Eigen::MatrixXd::Zero(d, n);
    rep.frame.center = Eigen::VectorXd::Zero(d);

    // coordinates: axis e0, circle planes (e1,e2)..(e_{2p-3}, e_{2p-2}),
    // sphere flat spanned by (e0, e_{2p-1}, e_{2p})
    int col = 0;
    for (int c = 0; c < p - 1; ++c) {
        const PointConfig arc = arc_with_one_diameter(circle_sizes[c], kInvSqrt2);
        embed_block(rep.config.points, arc.points, 1 + 2 * c, col);
        rep.frame.components.push_back(make_component(FrameComponent::Kind::Circle, kInvSqrt2,
                                                      d, 1 + 2 * c, 2, col, circle_sizes[c]));
        col += circle_sizes[c];
    }
    // sphere class: pole on the axis + equator arc in the last plane
    const int equator = sphere_size - 1;
    const PointConfig arc = arc_with_one_diameter(equator, kInvSqrt2);
    rep.config.points(0, col) = kInvSqrt2;  // pole: distance 1 to every equator point
    embed_block(rep.config.points, arc.points, d - 2, col + 1);

    FrameComponent sphere_comp;
    sphere_comp.kind = FrameComponent::Kind::Sphere2;
    sphere_comp.radius = kInvSqrt2;
    sphere_comp.basis = Eigen::MatrixXd::Zero(d, 3);
    sphere_comp.basis(0, 0) = 1.0;
    sphere_comp.basis(d - 2, 1) = 1.0;
    sphere_comp.basis(d - 1, 2) = 1.0;
    sphere_comp.members.resize(sphere_size);
    for (int i = 0; i < sphere_size; ++i) sphere_comp.members[i] = col + i;
    rep.frame.components.push_back(std::move(sphere_comp));

    rep.config.meta["generator"] = "lenz_odd_diam";
    rep.config.meta["kind"] = "diam";
    rep.config.meta["d"] = std::to_string(d);
    rep.config.meta["n"] = std::to_string(n);
    finalize_assembly(rep, 1e-9);
    return rep;
}

// ---------------------------------------------------------------------------
// lenz_d5_diam
// ---------------------------------------------------------------------------

namespace {

ConstructionReport d5_sphere_heavy(int n) {
    int n1 = n / 2 + 1;
    if (n1 == 5) n1 = (n + 1) / 2 + 1;
    if (n1 == 5)
        throw Unachievable("lenz_d5_diam: n = 8 forces a 5-point sphere class, which cannot "
                           "carry 2*5 - 2 diameters");
    const int n2 = n - n1;
    const ConstructionReport sphere = sphere_diameter_config(n1);  // centered at origin
    const double r1 = sphere.config.points.col(0).norm();
    if (!(r1 < kInvSqrt2))
        throw ConstructionFailed("lenz_d5_diam: sphere component radius " + fmt(r1) +
                                 " is not below 1/sqrt(2)");
    const double r2 = std::sqrt(1.0 - r1 * r1);
    const PointConfig arc = arc_with_one_diameter(n2, r2);

    ConstructionReport rep;
    rep.kind = GraphKind::Diameter;
    rep.expected_count = turan_edges(2, n) + n;
    rep.config.points = Eigen::MatrixXd::Zero(5, n);
    rep.frame.center = Eigen::VectorXd::Zero(5);
    embed_block(rep.config.points, sphere.config.points, 0, 0);
    embed_block(rep.config.points, arc.points, 3, n1);

    FrameComponent sphere_comp;
    sphere_comp.kind = FrameComponent::Kind::Sphere2;
    sphere_comp.radius = r1;
    sphere_comp.basis = Eigen::MatrixXd::Zero(5, 3);
    sphere_comp.basis(0, 0) = sphere_comp.basis(1, 1) = sphere_comp.basis(2, 2) = 1.0;
    sphere_comp.members.resize(n1);
    for (int i = 0; i < n1; ++i) sphere_comp.members[i] = i;
    rep.frame.components.push_back(std::move(sphere_comp));
    rep.frame.components.push_back(make_component(FrameComponent::Kind::Circle, r2, 5, 3, 2, n1, n2));

    rep.solver = sphere.solver;
    rep.config.meta["strategy"] = "sphere-heavy";
    rep.config.meta["n1"] = std::to_string(n1);
    rep.config.meta["n2"] = std::to_string(n2);
    return rep;
}

ConstructionReport d5_star_polygon(int n) {
    if (n % 4 == 0)
        throw InvalidInput("lenz_d5_diam: the star-polygon strategy needs n % 4 != 0 (an odd "
                           "half), got n = " + std::to_string(n));
    const int half = n / 2;
    const int n2 = (half % 2 == 1) ? half : n - half;  // the odd one
    const int n1 = n - n2;
    if (n1 < 3)
        throw InvalidInput("lenz_d5_diam: star-polygon strategy needs n1 >= 3, got " +
                           std::to_string(n1));
    const double r2 = 1.0 / (2.0 * std::cos(kPi / (2.0 * n2)));
    const double r1 = std::sqrt(1.0 - r2 * r2);  // >= sqrt(2/3) > 1/sqrt(2)
    const PointConfig sphere = sphere_n_diameter_config(n1, r1);
    const PointConfig star = star_polygon(n2);

    ConstructionReport rep;
    rep.kind = GraphKind::Diameter;
    rep.expected_count = turan_edges(2, n) + n;
    rep.config.points = Eigen::MatrixXd::Zero(5, n);
    rep.frame.center = Eigen::VectorXd::Zero(5);
    embed_block(rep.config.points, sphere.points, 0, 0);
    embed_block(rep.config.points, star.points, 3, n1);

    FrameComponent sphere_comp;
    sphere_comp.kind = FrameComponent::Kind::Sphere2;
    sphere_comp.radius = r1;
    sphere_comp.basis = Eigen::MatrixXd::Zero(5, 3);
    sphere_comp.basis(0, 0) = sphere_comp.basis(1, 1) = sphere_comp.basis(2, 2) = 1.0;
    sphere_comp.members.resize(n1);
    for (int i = 0; i < n1; ++i) sphere_comp.members[i] = i;
    rep.frame.components.push_back(std::move(sphere_comp));
    rep.frame.components.push_back(make_component(FrameComponent::Kind::Circle, r2, 5, 3, 2, n1, n2));

    rep.config.meta["strategy"] = "star-polygon";
    rep.config.meta["n1"] = std::to_string(n1);
    rep.config.meta["n2"] = std::to_string(n2);
    return rep;
}

} // namespace

ConstructionReport lenz_d5_diam(int n, D5Strategy strategy) {
    if (n < 6)
        throw InvalidInput("lenz_d5_diam: n must be >= 6, got " + std::to_string(n));
    if (n == 8)
        throw Unachievable("lenz_d5_diam: t_2(8) + 8 = 24 diameters are not realizable by "
                           "this family at n = 8 (both strategies degenerate)");

    ConstructionReport rep;
    switch (strategy) {
        case D5Strategy::SphereHeavy: rep = d5_sphere_heavy(n); break;
        case D5Strategy::StarPolygon: rep = d5_star_polygon(n); break;
        case D5Strategy::Auto:
            rep = (n % 4 != 0) ? d5_star_polygon(n) : d5_sphere_heavy(n);
            break;
    }
    rep.config.meta["generator"] = "lenz_d5_diam";
    rep.config.meta["kind"] = "diam";
    rep.config.meta["d"] = "5";
    rep.config.meta["n"] = std::to_string(n);
    finalize_assembly(rep, 1e-9);
    return rep;
}

// ---------------------------------------------------------------------------
// weak_lenz_frame_d5
// ---------------------------------------------------------------------------

WeakLenzFrameD5 weak_lenz_frame_d5(double r1, double r) {
    if (!(r1 > 0.0 && r1 < 1.0))
        throw InvalidInput("weak_lenz_frame_d5: need 0 < r1 < 1, got r1 = " + fmt(r1));
    if (!(r >= 0.0 && r < r1))
        throw InvalidInput("weak_lenz_frame_d5: need 0 <= r < r1, got r = " + fmt(r));
    WeakLenzFrameD5 f;
    f.r1 = r1;
    f.r2 = std::sqrt(1.0 - r1 * r1);
    f.r = r;
    f.s1 = std::sqrt(r1 * r1 - r * r);
    f.s2 = std::sqrt(f.r2 * f.r2 + r * r);
    f.o = Eigen::VectorXd::Zero(5);
    f.o_prime = Eigen::VectorXd::Zero(5);
    f.o_prime(0) = r;
    f.pole1_plus = Eigen::VectorXd::Zero(5);
    f.pole1_plus(0) = r1;
    f.pole1_minus = -f.pole1_plus;
    f.pole2_plus = Eigen::VectorXd::Zero(5);
    f.pole2_plus(0) = r + f.s2;
    f.pole2_minus = Eigen::VectorXd::Zero(5);
    f.pole2_minus(0) = r - f.s2;
    return f;
}

namespace {

// k points around a circle lying in span(axis_a, axis_b) about `center`.
Eigen::MatrixXd circle_samples(const Eigen::VectorXd& center, int axis_a, int axis_b,
                               double radius, int k) {
    Eigen::MatrixXd out(5, k);
    for (int i = 0; i < k; ++i) {
        const double theta = 2.0 * kPi * i / k;
        Eigen::VectorXd x = center;
        x(axis_a) += radius * std::cos(theta);
        x(axis_b) += radius * std::sin(theta);
        out.col(i) = x;
    }
    return out;
}

// k points spiralling over a 2-sphere in span(axis_a, axis_b, axis_c).
Eigen::MatrixXd sphere_samples(const Eigen::VectorXd& center, int axis_a, int axis_b,
                               int axis_c, double radius, int k) {
    Eigen::MatrixXd out(5, k);
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < k; ++i) {
        const double z = k == 1 ? 0.0 : 1.0 - 2.0 * i / (k - 1.0);
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double theta = golden * i;
        Eigen::VectorXd x = center;
        x(axis_a) += radius * rho * std::cos(theta);
        x(axis_b) += radius * rho * std::sin(theta);
        x(axis_c) += radius * z;
        out.col(i) = x;
    }
    return out;
}

} // namespace

Eigen::MatrixXd weak_frame_sample_c1(const WeakLenzFrameD5& f, int k) {
    return circle_samples(f.o_prime, 1, 2, f.s1, k);
}

Eigen::MatrixXd weak_frame_sample_c2(const WeakLenzFrameD5& f, int k) {
    return circle_samples(f.o, 3, 4, f.r2, k);
}

Eigen::MatrixXd weak_frame_sample_sigma1(const WeakLenzFrameD5& f, int k) {
    return sphere_samples(f.o, 1, 2, 0, f.r1, k);
}

Eigen::MatrixXd weak_frame_sample_sigma2(const WeakLenzFrameD5& f, int k) {
    return sphere_samples(f.o_prime, 3, 4, 0, f.s2, k);
}

// ---------------------------------------------------------------------------
// perturb / random_rotation
// ---------------------------------------------------------------------------

PointConfig perturb(const PointConfig& config, double magnitude, std::uint64_t seed) {
    if (!(magnitude >= 0.0))
        throw InvalidInput("perturb: magnitude must be >= 0, got " + fmt(magnitude));
    PointConfig out = config;
    if (magnitude == 0.0) return out;
    std::mt19937_64 rng(detail::mix_seed(seed));
    const Eigen::Index d = config.dim();
    for (Eigen::Index i = 0; i < config.size(); ++i) {
        Eigen::VectorXd v(d);
        for (Eigen::Index k = 0; k < d; ++k) v(k) = detail::uniform_pm1(rng);
        const double norm = v.norm();
        if (norm > 1.0) v /= norm;  // clamp into the unit ball
        out.points.col(i) += magnitude * v;
    }
    return out;
}

Eigen::MatrixXd random_rotation(int dim, std::uint64_t seed) {
    if (dim < 1) throw InvalidInput("random_rotation: dim must be >= 1");
    std::mt19937_64 rng(detail::mix_seed(seed, 0x5e'ed));
    Eigen::MatrixXd g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = detail::gaussian(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j)
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);  // fix the QR sign ambiguity
    if (q.determinant() < 0.0) q.col(0) = -q.col(0);  // force a proper rotation
    return q;
}

} // namespace lenz
