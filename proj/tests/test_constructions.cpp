#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <set>

#include "lenz/constructions.hpp"
#include "lenz/distance_graph.hpp"
#include "lenz/errors.hpp"
#include "lenz/formulas.hpp"

using namespace lenz;

namespace {

long long count_pairs(const PointConfig& c, GraphKind kind) {
    return static_cast<long long>(build_distance_graph(c, kind).edge_count());
}

double max_pair_dist(const PointConfig& c) { return diameter_of(c); }

} // namespace

TEST_CASE("squares on a circle") {
    for (int m = 1; m <= 40; ++m) {
        const PointConfig c = squares_on_circle(m);
        CHECK(c.dim() == 2);
        CHECK(c.size() == static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i)
            CHECK(c.points.col(i).norm() ==
                  doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
        if (m >= 2) {
            const long long expect = (m % 4 == 0) ? m : m - 1;
            CHECK(count_pairs(c, GraphKind::Unit) == expect);
        }
    }
    CHECK_THROWS_AS(squares_on_circle(0), InvalidInput);
}

TEST_CASE("star polygon diameter graph is the odd cycle") {
    for (int m : {3, 5, 7, 9, 21, 41}) {
        const PointConfig c = star_polygon(m);
        CHECK(max_pair_dist(c) == doctest::Approx(1.0).epsilon(1e-12));
        const DistanceGraph g = build_distance_graph(c, GraphKind::Diameter);
        CHECK(g.edge_count() == static_cast<std::size_t>(m));
        const BipartiteWitness w = is_bipartite_with_witness(g);
        CHECK_FALSE(w.bipartite);  // an odd cycle
        const auto adj = g.adjacency();
        for (int v = 0; v < m; ++v) CHECK(adj[v].size() == 2);
    }
    CHECK_THROWS_AS(star_polygon(4), InvalidInput);
    CHECK_THROWS_AS(star_polygon(1), InvalidInput);
}

TEST_CASE("arc with exactly one diameter") {
    for (double radius : {1.0 / std::sqrt(2.0), 0.7, 0.9}) {
        for (int m : {2, 3, 8, 33}) {
            const PointConfig c = arc_with_one_diameter(m, radius);
            CHECK(count_pairs(c, GraphKind::Diameter) == 1);
            CHECK(max_pair_dist(c) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(arc_with_one_diameter(1, 0.8), InvalidInput);
    CHECK_THROWS_AS(arc_with_one_diameter(5, 0.5), InvalidInput);
}

TEST_CASE("sphere diameter configuration") {
    SUBCASE("counts and cosphericity") {
        for (int m : {4, 6, 7, 8, 11, 15, 24}) {
            const ConstructionReport r = sphere_diameter_config(m);
            CHECK(r.config.dim() == 3);
            CHECK(r.config.size() == static_cast<std::size_t>(m));
            CHECK(r.expected_count == 2 * m - 2);
            CHECK(r.achieved_count == 2 * m - 2);
            CHECK(r.match());
            CHECK(max_pair_dist(r.config) <= 1.0 + 1e-9);
            // returned centered: one common circumradius
            const double rad = r.config.points.col(0).norm();
            for (int i = 1; i < m; ++i)
                CHECK(r.config.points.col(i).norm() == doctest::Approx(rad).epsilon(1e-8));
        }
    }
    SUBCASE("fifteen points give twenty-eight diameters") {
        CHECK(sphere_diameter_config(15).achieved_count == 28);
    }
    SUBCASE("odd sizes carry solver stats with tiny residuals") {
        const ConstructionReport r = sphere_diameter_config(21);
        REQUIRE(r.solver.has_value());
        CHECK(r.solver->final_residual <= 1e-10);
        CHECK(r.solver->bisection_iterations > 0);
        CHECK(r.solver->radius > 0.5);
        CHECK(r.solver->radius < 1.0 / std::sqrt(2.0));
    }
    SUBCASE("five points refused, four fine") {
        CHECK_THROWS_AS(sphere_diameter_config(5), Unachievable);
        CHECK_THROWS_AS(sphere_diameter_config(3), InvalidInput);
        CHECK(sphere_diameter_config(4).achieved_count == 6);  // regular tetrahedron
    }
}

TEST_CASE("n diameters on a large sphere") {
    for (double s : {1.0 / std::sqrt(2.0), 0.8, 1.3}) {
        for (int m : {3, 4, 5, 6, 9, 12, 17}) {
            const PointConfig c = sphere_n_diameter_config(m, s);
            CHECK(c.size() == static_cast<std::size_t>(m));
            CHECK(count_pairs(c, GraphKind::Diameter) == m);
            CHECK(max_pair_dist(c) <= 1.0 + 1e-9);
            for (int i = 0; i < m; ++i)
                CHECK(c.points.col(i).norm() == doctest::Approx(s).epsilon(1e-9));
        }
    }
    CHECK_THROWS_AS(sphere_n_diameter_config(2, 0.8), InvalidInput);
    CHECK_THROWS_AS(sphere_n_diameter_config(6, 0.6), InvalidInput);
}

TEST_CASE("five points, seven diameters") {
    const PointConfig c = five_point_seven_diameter_fixture();
    CHECK(c.dim() == 3);
    CHECK(c.size() == 5);
    CHECK(count_pairs(c, GraphKind::Diameter) == 7);
    CHECK(max_pair_dist(c) <= 1.0 + 1e-9);
}

TEST_CASE("even-dimension unit maximizer") {
    for (int d : {6, 8}) {
        for (int n : {2 * d, 17, 24, 33, 41}) {
            const ConstructionReport r = lenz_even_unit(d, n);
            CHECK(r.config.dim() == d);
            CHECK(r.config.size() == static_cast<std::size_t>(n));
            CHECK(r.kind == GraphKind::Unit);
            CHECK(r.match());
            CHECK(r.achieved_count == unit_formula_even(d, n).value);
            CHECK(count_pairs(r.config, GraphKind::Unit) == r.achieved_count);
        }
    }
    // the frame records one circle per nonempty class, radius 1/sqrt(2)
    const ConstructionReport r = lenz_even_unit(6, 24);
    CHECK(r.frame.components.size() == 3);
    for (const auto& comp : r.frame.components) {
        CHECK(comp.kind == FrameComponent::Kind::Circle);
        CHECK(comp.radius == doctest::Approx(1.0 / std::sqrt(2.0)));
        CHECK(comp.members.size() == 8);
    }
}

TEST_CASE("diameter maximizers hit the closed forms") {
    SUBCASE("even d >= 6") {
        for (int d : {6, 8})
            for (int n : {d, d + 5, 23, 40}) {
                const ConstructionReport r = lenz_even_diam(d, n);
                CHECK(r.match());
                CHECK(r.achieved_count == diam_formula(d, n).value);
                CHECK(max_pair_dist(r.config) == doctest::Approx(1.0).epsilon(1e-9));
            }
        CHECK_THROWS_AS(lenz_even_diam(6, 5), InvalidInput);
    }
    SUBCASE("dimension 4") {
        for (int n : {6, 7, 8, 9, 12, 25, 31}) {
            const ConstructionReport r = lenz_d4_diam(n);
            CHECK(r.match());
            CHECK(r.achieved_count == diam_formula(4, n).value);
        }
        CHECK(lenz_d4_diam(7).achieved_count == 16);
        CHECK(lenz_d4_diam(8).achieved_count == 21);
    }
    SUBCASE("dimension 5, both strategies") {
        for (int n : {9, 11, 13, 22, 30}) {
            const ConstructionReport heavy = lenz_d5_diam(n, D5Strategy::SphereHeavy);
            CHECK(heavy.match());
            CHECK(heavy.achieved_count == diam_formula(5, n).value);
            if (n % 4 != 0) {
                const ConstructionReport star = lenz_d5_diam(n, D5Strategy::StarPolygon);
                CHECK(star.match());
                CHECK(star.achieved_count == diam_formula(5, n).value);
            }
        }
        CHECK_THROWS_AS(lenz_d5_diam(8), Unachievable);
        CHECK_THROWS_AS(lenz_d5_diam(12, D5Strategy::StarPolygon), InvalidInput);
        CHECK(lenz_d5_diam(12).match());  // Auto falls back to SphereHeavy
    }
    SUBCASE("odd d >= 7") {
        for (int d : {7, 9})
            for (int n : {3 * (d - 1) / 2, 2 * d, 2 * d + 1, 33}) {
                const ConstructionReport r = lenz_odd_diam(d, n);
                CHECK(r.match());
                CHECK(r.achieved_count == diam_formula(d, n).value);
                CHECK(max_pair_dist(r.config) == doctest::Approx(1.0).epsilon(1e-9));
            }
        CHECK_THROWS_AS(lenz_odd_diam(7, 8), InvalidInput);
        CHECK_THROWS_AS(lenz_odd_diam(6, 20), InvalidInput);
    }
}

TEST_CASE("class metadata round-trips the plan") {
    const ConstructionReport r = lenz_even_unit(6, 33);
    REQUIRE(r.config.meta.count("classes") == 1);
    REQUIRE(r.config.meta.count("plan") == 1);
    CHECK(r.config.meta.at("plan") == "10,11,12");
    // class labels partition all 33 columns with sizes matching the plan
    std::map<char, int> sizes;
    const std::string& labels = r.config.meta.at("classes");
    for (std::size_t i = 0; i < labels.size(); i += 2) ++sizes[labels[i]];
    CHECK(sizes['0'] == 10);
    CHECK(sizes['1'] == 11);
    CHECK(sizes['2'] == 12);
}

TEST_CASE("weak dimension-5 frame") {
    const WeakLenzFrameD5 f = weak_lenz_frame_d5(0.8, 0.3);
    CHECK(f.r2 == doctest::Approx(std::sqrt(1.0 - 0.64)).epsilon(1e-15));
    CHECK(f.s1 == doctest::Approx(std::sqrt(0.64 - 0.09)).epsilon(1e-15));
    CHECK(f.s2 == doctest::Approx(std::sqrt(1.0 - 0.64 + 0.09)).epsilon(1e-15));
    CHECK(f.o_prime(0) == doctest::Approx(0.3));
    CHECK(f.pole1_plus(0) == doctest::Approx(0.8));
    CHECK(f.pole2_minus(0) == doctest::Approx(0.3 - f.s2));

    const Eigen::MatrixXd c1 = weak_frame_sample_c1(f, 24);
    const Eigen::MatrixXd s2 = weak_frame_sample_sigma2(f, 40);
    // every point of C1 is at distance exactly 1 from every point of S2
    for (int i = 0; i < c1.cols(); ++i)
        for (int j = 0; j < s2.cols(); ++j)
            CHECK((c1.col(i) - s2.col(j)).norm() == doctest::Approx(1.0).epsilon(1e-12));
    // C1 lies on S1
    const Eigen::MatrixXd s1 = weak_frame_sample_sigma1(f, 10);
    for (int i = 0; i < c1.cols(); ++i)
        CHECK(c1.col(i).norm() == doctest::Approx(f.r1).epsilon(1e-12));
    for (int i = 0; i < s1.cols(); ++i)
        CHECK(s1.col(i).norm() == doctest::Approx(f.r1).epsilon(1e-12));
    // C2 circles the origin in the complementary plane and lies on S2
    const Eigen::MatrixXd c2 = weak_frame_sample_c2(f, 12);
    for (int i = 0; i < c2.cols(); ++i) {
        CHECK(c2(0, i) == 0.0);
        CHECK(c2.col(i).norm() == doctest::Approx(f.r2).epsilon(1e-12));
        CHECK((c2.col(i) - f.o_prime).norm() == doctest::Approx(f.s2).epsilon(1e-12));
    }
    CHECK_THROWS_AS(weak_lenz_frame_d5(1.2, 0.1), InvalidInput);
    CHECK_THROWS_AS(weak_lenz_frame_d5(0.5, 0.6), InvalidInput);
}

TEST_CASE("perturb and rotate are deterministic and bounded") {
    const ConstructionReport r = lenz_even_unit(6, 17);
    const PointConfig p1 = perturb(r.config, 1e-8, 12345);
    const PointConfig p2 = perturb(r.config, 1e-8, 12345);
    CHECK((p1.points.array() == p2.points.array()).all());
    const PointConfig p3 = perturb(r.config, 1e-8, 54321);
    CHECK_FALSE((p1.points.array() == p3.points.array()).all());
    // allow a few ulp of slack: the realized displacement includes the
    // rounding of coordinate addition, not just the sampled offset
    for (int i = 0; i < p1.points.cols(); ++i)
        CHECK((p1.points.col(i) - r.config.points.col(i)).norm() <= 1e-8 * (1.0 + 1e-6));

    const Eigen::MatrixXd q1 = random_rotation(6, 7);
    const Eigen::MatrixXd q2 = random_rotation(6, 7);
    CHECK((q1.array() == q2.array()).all());
    CHECK((q1 * q1.transpose() - Eigen::MatrixXd::Identity(6, 6)).norm() <= 1e-12);
    CHECK(q1.determinant() == doctest::Approx(1.0).epsilon(1e-10));

    // rotation preserves the distance graph exactly up to tolerance
    PointConfig rotated = r.config;
    rotated.points = q1 * rotated.points;
    CHECK(count_pairs(rotated, GraphKind::Unit) == r.achieved_count);
}
