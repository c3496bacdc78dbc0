// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure.  Grids and tolerances are fixed here on purpose — they are the
// contract, not tunables.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lenz/constructions.hpp"
#include "lenz/detect.hpp"
#include "lenz/distance_graph.hpp"
#include "lenz/errors.hpp"
#include "lenz/formulas.hpp"
#include "lenz/sphere_fit.hpp"

using namespace lenz;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int number, const std::string& title, bool pass, const std::string& detail) {
    std::cout << (pass ? "PASS" : "FAIL") << "  " << number << ". " << title;
    if (!detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << std::endl;
    if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

long long recount(const PointConfig& config, GraphKind kind) {
    TolerancePolicy tol;
    tol.eps_abs = 1e-9;
    return static_cast<long long>(build_distance_graph(config, kind, tol).edge_count());
}

// ---------------------------------------------------------------------------

void criterion_1() {
    const auto start = Clock::now();
    std::string detail;
    bool pass = true;
    for (int d : {6, 8, 10}) {
        for (int n = 2 * d; n <= 600 && pass; ++n) {
            const long long opt = optimize_unit_partition_even(d, n).value;
            const long long formula = unit_formula_even(d, n).value;
            if (opt != formula) {
                pass = false;
                detail = "d=" + std::to_string(d) + " n=" + std::to_string(n) + ": optimizer " +
                         std::to_string(opt) + " vs formula " + std::to_string(formula);
            }
        }
    }
    const double secs = seconds_since(start);
    if (pass && secs >= 10.0) {
        pass = false;
        detail = "too slow";
    }
    std::ostringstream os;
    os.precision(2);
    os << std::fixed << secs << " s";
    report(1, "partition optimizer equals the closed form, d in {6,8,10}, n in [2d,600]", pass,
           detail.empty() ? os.str() : detail);
}

void criterion_2() {
    bool pass = true;
    std::string detail;
    for (int d : {6, 8}) {
        for (int n = 12; n <= 60 && pass; ++n) {
            const ConstructionReport r = lenz_even_unit(d, n);
            const long long counted = recount(r.config, GraphKind::Unit);
            const long long formula = unit_formula_even(d, n).value;
            if (counted != formula) {
                pass = false;
                detail = "d=" + std::to_string(d) + " n=" + std::to_string(n) + ": " +
                         std::to_string(counted) + " vs " + std::to_string(formula);
            }
        }
    }
    if (pass && recount(lenz_even_unit(6, 24).config, GraphKind::Unit) != 216) {
        pass = false;
        detail = "(6,24) != 216";
    }
    if (pass && recount(lenz_even_unit(6, 27).config, GraphKind::Unit) != 267) {
        pass = false;
        detail = "(6,27) != 267";
    }
    report(2, "even-d unit construction counts match the closed form, d in {6,8}, n in [12,60]",
           pass, detail);
}

void criterion_3() {
    bool pass = true;
    std::string detail;
    auto check_cell = [&](int d, int n, const ConstructionReport& r) {
        const long long counted = recount(r.config, GraphKind::Diameter);
        const long long formula = diam_formula(d, n).value;
        if (counted != formula) {
            pass = false;
            detail = "d=" + std::to_string(d) + " n=" + std::to_string(n) + ": " +
                     std::to_string(counted) + " vs " + std::to_string(formula);
            return;
        }
        const double diam = diameter_of(r.config);
        if (std::abs(diam - 1.0) > 1e-9) {
            pass = false;
            detail = "d=" + std::to_string(d) + " n=" + std::to_string(n) +
                     ": diameter off by " + std::to_string(diam - 1.0);
        }
    };
    for (int n = 6; n <= 200 && pass; ++n) check_cell(4, n, lenz_d4_diam(n));
    for (int n = 6; n <= 200 && pass; ++n)
        if (n != 8) check_cell(5, n, lenz_d5_diam(n));
    for (int d : {6, 8})
        for (int n = d; n <= 200 && pass; ++n) check_cell(d, n, lenz_even_diam(d, n));
    for (int d : {7, 9})
        for (int n = 2 * d; n <= 200 && pass; ++n) check_cell(d, n, lenz_odd_diam(d, n));
    if (pass && recount(lenz_d4_diam(7).config, GraphKind::Diameter) != 16) {
        pass = false;
        detail = "(4,7) != 16";
    }
    if (pass && recount(lenz_d4_diam(8).config, GraphKind::Diameter) != 21) {
        pass = false;
        detail = "(4,8) != 21";
    }
    if (pass && recount(lenz_d5_diam(10).config, GraphKind::Diameter) != 35) {
        pass = false;
        detail = "(5,10) != 35";
    }
    report(3, "diameter constructions match the closed form for d in {4..9} up to n=200", pass,
           detail);
}

void criterion_4() {
    const auto start = Clock::now();
    bool pass = true;
    std::string detail;
    for (int m = 4; m <= 41 && pass; ++m) {
        if (m == 5) continue;
        const ConstructionReport r = sphere_diameter_config(m);
        const long long counted = recount(r.config, GraphKind::Diameter);
        if (counted != 2 * m - 2) {
            pass = false;
            detail = "m=" + std::to_string(m) + ": " + std::to_string(counted) + " vs " +
                     std::to_string(2 * m - 2);
            break;
        }
        const SphereFit fit = fit_sphere(r.config.points);
        if (fit.rank() != 3 || fit.residual > 1e-8) {
            pass = false;
            detail = "m=" + std::to_string(m) + ": cosphericity residual " +
                     std::to_string(fit.residual);
            break;
        }
        if (m % 2 == 1) {
            if (!r.solver || r.solver->final_residual > 1e-10) {
                pass = false;
                detail = "m=" + std::to_string(m) + ": solver residual out of bounds";
                break;
            }
        }
    }
    if (pass && sphere_diameter_config(15).achieved_count != 28) {
        pass = false;
        detail = "m=15 != 28";
    }
    if (pass) {
        try {
            (void)sphere_diameter_config(5);
            pass = false;
            detail = "m=5 not refused";
        } catch (const Unachievable&) {
        }
    }
    const double secs = seconds_since(start);
    if (pass && secs >= 5.0) {
        pass = false;
        detail = "too slow";
    }
    std::ostringstream os;
    os.precision(2);
    os << std::fixed << secs << " s";
    report(4, "sphere configurations realize 2m-2 diameters for m in {4,6,...,41}", pass,
           detail.empty() ? os.str() : detail);
}

void criterion_5() {
    bool pass = true;
    std::string detail;
    for (int m = 1; m <= 64 && pass; ++m) {
        const PointConfig c = squares_on_circle(m);
        if (m < 2) continue;
        const long long counted = recount(c, GraphKind::Unit);
        const long long expect = (m % 4 == 0) ? m : m - 1;
        if (counted != expect) {
            pass = false;
            detail = "squares m=" + std::to_string(m);
        }
    }
    for (int m = 3; m <= 41 && pass; m += 2) {
        if (recount(star_polygon(m), GraphKind::Diameter) != m) {
            pass = false;
            detail = "star m=" + std::to_string(m);
        }
    }
    for (double radius : {1.0 / std::sqrt(2.0), 0.7, 0.9}) {
        for (int m = 2; m <= 64 && pass; ++m) {
            if (recount(arc_with_one_diameter(m, radius), GraphKind::Diameter) != 1) {
                pass = false;
                detail = "arc m=" + std::to_string(m) + " radius=" + std::to_string(radius);
            }
        }
    }
    report(5, "circle gadgets: squares, star polygons, one-diameter arcs", pass, detail);
}

void criterion_6() {
    bool pass = true;
    std::string detail;
    std::mt19937_64 rng(0x6d1a6e5au);
    auto unit01 = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };
    for (int trial = 0; trial < 200 && pass; ++trial) {
        PointConfig c;
        if (trial % 8 == 0) {
            // seed the pool with genuinely cycle-rich cases
            c = star_polygon(3 + 2 * ((trial / 8) % 5));
        } else {
            const int m = 4 + static_cast<int>(unit01() * 9);  // 4..12
            const double radius = 0.55 + unit01() * 0.4;
            c.points.resize(2, m);
            for (int j = 0; j < m; ++j) {
                const double a = unit01() * 2.0 * M_PI;
                c.points(0, j) = radius * std::cos(a);
                c.points(1, j) = radius * std::sin(a);
            }
            c.points /= diameter_of(c);  // rescale: concyclic with diameter 1
        }
        const DistanceGraph g = build_distance_graph(c, GraphKind::Diameter);
        for (const auto& cycle : enumerate_simple_cycles(g)) {
            if (cycle.size() % 2 == 0) {
                pass = false;
                detail = "trial " + std::to_string(trial) + ": even cycle of length " +
                         std::to_string(cycle.size());
                break;
            }
        }
    }
    report(6, "no even cycle in 200 concyclic diameter-1 graphs", pass, detail);
}

void criterion_7() {
    bool pass = true;
    std::string detail;
    for (int d : {6, 8}) {
        const int p = d / 2;
        for (int n = 2; n <= 40 && pass; ++n) {
            const ConstructionReport r = lenz_even_unit(d, n);
            const DistanceGraph g = build_distance_graph(r.config, GraphKind::Unit);
            if (contains_complete_multipartite(g, p + 1, 3)) {
                pass = false;
                detail = "d=" + std::to_string(d) + " n=" + std::to_string(n);
            }
        }
    }
    report(7, "unit graphs contain no complete (p+1)-partite subgraph on triples", pass, detail);
}

// --- criterion 8 helpers -----------------------------------------------------

std::set<std::set<int>> truth_partition(const PointConfig& config) {
    std::map<std::string, std::set<int>> by_label;
    std::string label;
    const std::string& classes = config.meta.at("classes");
    int col = 0;
    for (std::size_t i = 0; i <= classes.size(); ++i) {
        if (i == classes.size() || classes[i] == ',') {
            by_label[label].insert(col++);
            label.clear();
        } else {
            label.push_back(classes[i]);
        }
    }
    std::set<std::set<int>> out;
    for (auto& [_, members] : by_label) out.insert(members);
    return out;
}

struct GridConfig {
    std::string name;
    ConstructionReport report;
};

std::vector<GridConfig> detector_grid() {
    std::vector<GridConfig> grid;
    auto add = [&grid](const std::string& name, ConstructionReport r) {
        grid.push_back({name, std::move(r)});
    };
    // even-d unit frames; keep every class at >= 5 points so no class is a
    // lone square (whose antipodal pairs are a known degenerate slice)
    for (int d : {6, 8}) {
        int added = 0;
        for (int n = 5 * d / 2; n <= 100 && added < 8; ++n) {
            const PartitionPlan plan = optimize_unit_partition_even(d, n);
            if (plan.sizes.front() < 5) continue;
            add("even-unit d=" + std::to_string(d) + " n=" + std::to_string(n),
                lenz_even_unit(d, n));
            ++added;
        }
        if (added != 8) throw std::runtime_error("detector grid: not enough unit cells");
    }
    // even-d diameter frames: balanced arcs, every class >= 4
    for (int n : {12, 15, 18, 21, 27, 33}) add("even-diam d=6 n=" + std::to_string(n),
                                               lenz_even_diam(6, n));
    for (int n : {16, 20, 26, 32, 40, 48}) add("even-diam d=8 n=" + std::to_string(n),
                                               lenz_even_diam(8, n));
    // dimension 4: star (odd, >= 5) + arc (>= 4)
    {
        int added = 0;
        for (int n = 11; n <= 100 && added < 11; ++n) {
            const DiamSplitD4 split = optimize_diam_split_d4(n);
            if (split.n1 < 5 || split.n2 < 4) continue;
            add("d4-diam n=" + std::to_string(n), lenz_d4_diam(n));
            ++added;
        }
        if (added != 11) throw std::runtime_error("detector grid: not enough d4 cells");
    }
    // dimension 5, sphere-heavy strategy.  Cells where a point sits at
    // distance 1 from every class-mate admit a second, equally valid
    // partition of the same class sizes (the point can swap sides), so
    // recovery there is ill-posed: that rules out the star-polygon strategy
    // entirely and sphere-heavy n = 3 (mod 4), whose ring+apex sphere ties
    // with the arc+apex alternative.
    {
        int added = 0;
        for (int n = 10; added < 11; ++n) {
            if (n % 4 == 3) continue;
            add("d5-diam n=" + std::to_string(n), lenz_d5_diam(n, D5Strategy::SphereHeavy));
            ++added;
        }
    }
    return grid;
}

void criterion_8() {
    bool pass = true;
    std::string detail;
    std::vector<GridConfig> grid;
    try {
        grid = detector_grid();
    } catch (const std::exception& e) {
        report(8, "detector recovery", false, e.what());
        return;
    }
    if (grid.size() != 50) {
        report(8, "detector recovery", false,
               "grid has " + std::to_string(grid.size()) + " cells, wanted 50");
        return;
    }
    for (std::size_t i = 0; i < grid.size() && pass; ++i) {
        const ConstructionReport& r = grid[i].report;
        PointConfig moved = r.config;
        moved.points =
            random_rotation(static_cast<int>(moved.dim()), 1000 + static_cast<std::uint64_t>(i)) *
            moved.points;
        moved = perturb(moved, 1e-8, 2000 + static_cast<std::uint64_t>(i));

        const DetectedStructure s = detect_lenz(moved, 1e-6, 0);
        std::set<std::set<int>> detected;
        for (const auto& cls : s.classes) detected.insert({cls.members.begin(), cls.members.end()});
        if (!s.residual.empty() || detected != truth_partition(r.config)) {
            pass = false;
            detail = grid[i].name + ": partition not recovered (residual " +
                     std::to_string(s.residual.size()) + ")";
            break;
        }
        // radii must match the generator frame's components within 1e-6
        for (const auto& cls : s.classes) {
            const std::set<int> members(cls.members.begin(), cls.members.end());
            bool found = false;
            for (const auto& comp : r.frame.components) {
                if (std::set<int>(comp.members.begin(), comp.members.end()) == members) {
                    found = true;
                    if (std::abs(comp.radius - cls.fit.radius) > 1e-6) {
                        pass = false;
                        detail = grid[i].name + ": radius off by " +
                                 std::to_string(comp.radius - cls.fit.radius);
                    }
                }
            }
            if (!found) {
                pass = false;
                detail = grid[i].name + ": detected class matches no frame component";
            }
            if (!pass) break;
        }
    }
    // 50 uniform clouds: everything lands in the residual
    std::mt19937_64 rng(0xc10d5eedULL);
    auto pm1 = [&rng]() { return (rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
    for (int t = 0; t < 50 && pass; ++t) {
        const int dim = 4 + t % 5;
        const int n = 20 + (t % 5) * 20;
        PointConfig cloud;
        cloud.points.resize(dim, n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < dim; ++i) cloud.points(i, j) = pm1();
        const DetectedStructure s = detect_lenz(cloud, 1e-6, 0);
        if (!s.classes.empty() || s.residual.size() != static_cast<std::size_t>(n)) {
            pass = false;
            detail = "cloud " + std::to_string(t) + " produced a class";
        }
    }
    report(8, "detector recovers 50 rotated+perturbed frames exactly; 50 clouds stay residual",
           pass, detail);
}

void criterion_9() {
    bool pass = true;
    std::string detail;
    const PointConfig c = five_point_seven_diameter_fixture();
    const long long counted = recount(c, GraphKind::Diameter);
    if (c.size() != 5 || counted != 7) {
        pass = false;
        detail = "recounted " + std::to_string(counted);
    }
    const SphereFit fit = fit_sphere(c.points);
    if (pass && (fit.rank() != 3 || fit.residual > 1e-8)) {
        pass = false;
        detail = "fixture is not cospherical";
    }
    report(9, "bundled 5-point fixture achieves 7 diameters on a sphere", pass, detail);
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (g_failures == 0) {
        std::cout << "acceptance: all 9 criteria passed" << std::endl;
        return 0;
    }
    std::cout << "acceptance: " << g_failures << " criterion(s) failed" << std::endl;
    return 1;
}
