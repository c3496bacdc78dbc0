// lenzgeo: generate, tabulate, count, verify, and detect extremal
// unit-distance / diameter point configurations.
//
// Exit codes: 0 success (and verification match), 1 usage or invalid input,
// 2 construction failure, 3 verification mismatch.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lenz/constructions.hpp"
#include "lenz/detect.hpp"
#include "lenz/errors.hpp"
#include "lenz/formulas.hpp"
#include "lenz/io.hpp"
#include "lenz/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitConstruction = 2;
constexpr int kExitMismatch = 3;

struct Range {
    int lo = 0, hi = 0;
};

// "7" or "4..10"
Range parse_range(const std::string& text) {
    Range r;
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            r.lo = r.hi = std::stoi(text);
        } else {
            r.lo = std::stoi(text.substr(0, dots));
            r.hi = std::stoi(text.substr(dots + 2));
        }
    } catch (const std::exception&) {
        throw lenz::InvalidInput("bad range \"" + text + "\" (expected N or A..B)");
    }
    if (r.hi < r.lo) throw lenz::InvalidInput("empty range \"" + text + "\"");
    return r;
}

lenz::D5Strategy parse_strategy(const std::string& name) {
    if (name == "auto") return lenz::D5Strategy::Auto;
    if (name == "sphere-heavy") return lenz::D5Strategy::SphereHeavy;
    if (name == "star-polygon") return lenz::D5Strategy::StarPolygon;
    throw lenz::InvalidInput("unknown strategy \"" + name +
                             "\" (auto | sphere-heavy | star-polygon)");
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

struct GenOptions {
    std::string kind;
    int d = 0;
    int n = 0;
    std::string strategy = "auto";
    double radius = 1.0 / std::sqrt(2.0);
    std::uint64_t seed = 0;
    std::string out;
};

int run_gen(const GenOptions& opt) {
    lenz::ConstructionReport report;
    if (opt.kind == "even-unit") {
        report = lenz::lenz_even_unit(opt.d, opt.n);
    } else if (opt.kind == "even-diam") {
        report = lenz::lenz_even_diam(opt.d, opt.n);
    } else if (opt.kind == "d4-diam") {
        report = lenz::lenz_d4_diam(opt.n);
    } else if (opt.kind == "d5-diam") {
        report = lenz::lenz_d5_diam(opt.n, parse_strategy(opt.strategy));
    } else if (opt.kind == "odd-diam") {
        report = lenz::lenz_odd_diam(opt.d, opt.n);
    } else if (opt.kind == "sphere-diam") {
        report = lenz::sphere_diameter_config(opt.n);
    } else if (opt.kind == "sphere-n-diam") {
        report.config = lenz::sphere_n_diameter_config(opt.n, opt.radius);
        report.kind = lenz::GraphKind::Diameter;
        report.expected_count = report.achieved_count = opt.n;
    } else if (opt.kind == "star") {
        report.config = lenz::star_polygon(opt.n);
        report.kind = lenz::GraphKind::Diameter;
        report.expected_count = report.achieved_count = opt.n;
    } else if (opt.kind == "squares") {
        report.config = lenz::squares_on_circle(opt.n);
        report.kind = lenz::GraphKind::Unit;
        report.expected_count = report.achieved_count = (opt.n % 4 == 0) ? opt.n : opt.n - 1;
    } else if (opt.kind == "arc") {
        report.config = lenz::arc_with_one_diameter(opt.n, opt.radius);
        report.kind = lenz::GraphKind::Diameter;
        report.expected_count = report.achieved_count = 1;
    } else {
        throw lenz::InvalidInput(
            "unknown kind \"" + opt.kind +
            "\" (even-unit | even-diam | d4-diam | d5-diam | odd-diam | sphere-diam | "
            "sphere-n-diam | star | squares | arc)");
    }

    lenz::write_config(report.config, opt.out);
    lenz::write_report(report, opt.out + ".report.json");
    std::cout << "wrote " << report.config.size() << " points (dim " << report.config.dim()
              << ") to " << opt.out << "\n"
              << "expected " << report.expected_count << ", achieved " << report.achieved_count
              << (report.match() ? " [match]" : " [MISMATCH]") << "\n";
    return report.match() ? kExitOk : kExitMismatch;
}

// ---------------------------------------------------------------------------
// table
// ---------------------------------------------------------------------------

struct TableOptions {
    std::string formula;
    std::string d_range = "4..4";
    std::string n_range;
    std::string format = "csv";
    std::string out;
};

int run_table(const TableOptions& opt) {
    const Range dr = opt.formula == "unit-d4" ? Range{4, 4} : parse_range(opt.d_range);
    const Range nr = parse_range(opt.n_range);
    if (opt.format != "csv" && opt.format != "json")
        throw lenz::InvalidInput("unknown format \"" + opt.format + "\" (csv | json)");

    std::ostringstream os;
    bool json_first = true;
    if (opt.format == "csv")
        os << "d,n,value,case,asymptotic_only\n";
    else
        os << "[";
    for (int d = dr.lo; d <= dr.hi; ++d)
        for (int n = nr.lo; n <= nr.hi; ++n) {
            std::optional<lenz::FormulaResult> cell;
            std::string error;
            try {
                if (opt.formula == "unit-even")
                    cell = lenz::unit_formula_even(d, n);
                else if (opt.formula == "unit-d4")
                    cell = lenz::unit_formula_d4(n);
                else if (opt.formula == "diam")
                    cell = lenz::diam_formula(d, n);
                else
                    throw lenz::InvalidInput("unknown formula \"" + opt.formula +
                                             "\" (unit-even | unit-d4 | diam)");
            } catch (const lenz::InvalidInput& e) {
                if (opt.formula != "unit-even" && opt.formula != "unit-d4" &&
                    opt.formula != "diam")
                    throw;         // bad formula name is a usage error,
                error = e.what();  // an out-of-domain cell is just an error row
            }
            if (opt.format == "csv") {
                if (cell)
                    os << d << ',' << n << ',' << cell->value << ',' << cell->case_label << ','
                       << (cell->asymptotic_only ? "true" : "false") << "\n";
                else
                    os << d << ',' << n << ",,error: " << error << ",\n";
            } else {
                if (!json_first) os << ",";
                json_first = false;
                if (cell)
                    os << "\n  {\"d\":" << d << ",\"n\":" << n << ",\"value\":" << cell->value
                       << ",\"case\":\"" << cell->case_label << "\",\"asymptotic_only\":"
                       << (cell->asymptotic_only ? "true" : "false") << "}";
                else
                    os << "\n  {\"d\":" << d << ",\"n\":" << n << ",\"error\":\"" << error
                       << "\"}";
            }
        }
    if (opt.format == "json") os << "\n]\n";

    if (opt.out.empty())
        std::cout << os.str();
    else {
        std::ofstream f(opt.out, std::ios::binary | std::ios::trunc);
        if (!f) throw lenz::InvalidInput("cannot open \"" + opt.out + "\" for writing");
        f << os.str();
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// count / verify / detect
// ---------------------------------------------------------------------------

int run_count(const std::string& in, const std::string& kind, double tol_abs) {
    const lenz::PointConfig config = lenz::read_config(in);
    lenz::GraphKind gk;
    if (kind == "unit")
        gk = lenz::GraphKind::Unit;
    else if (kind == "diam")
        gk = lenz::GraphKind::Diameter;
    else
        throw lenz::InvalidInput("unknown kind \"" + kind + "\" (unit | diam)");
    lenz::TolerancePolicy tol;
    tol.eps_abs = tol_abs;
    std::cout << lenz::build_distance_graph(config, gk, tol).edge_count() << "\n";
    return kExitOk;
}

int run_verify(const std::string& in, double tol_abs) {
    const lenz::PointConfig config = lenz::read_config(in);
    lenz::TolerancePolicy tol;
    tol.eps_abs = tol_abs;
    lenz::CountReport rep = lenz::verify_config(config, tol);
    bool ok = rep.match;

    // cross-check the sidecar when present: counts and digest must agree
    std::string sidecar_note;
    try {
        const lenz::SidecarReport side = lenz::read_report(in + ".report.json");
        if (side.achieved_count != rep.achieved || side.expected_count != rep.formula ||
            side.digest != rep.digest) {
            ok = false;
            sidecar_note = "sidecar disagrees (counts or digest)";
        }
    } catch (const lenz::InvalidInput&) {
        sidecar_note = "no readable sidecar";
    }

    std::cout << lenz::count_report_to_json(rep);
    if (!sidecar_note.empty()) std::cerr << "note: " << sidecar_note << "\n";
    return ok ? kExitOk : kExitMismatch;
}

int run_detect(const std::string& in, double epsilon, std::uint64_t seed) {
    const lenz::PointConfig config = lenz::read_config(in);
    const lenz::DetectedStructure s = lenz::detect_lenz(config, epsilon, seed);
    std::cout << lenz::detected_to_json(s);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"extremal unit-distance and diameter configurations"};
    app.require_subcommand(1);

    GenOptions gen;
    CLI::App* gen_cmd = app.add_subcommand("gen", "generate a configuration");
    gen_cmd->add_option("--kind", gen.kind, "generator")->required();
    gen_cmd->add_option("--d", gen.d, "dimension");
    gen_cmd->add_option("--n", gen.n, "point count")->required();
    gen_cmd->add_option("--strategy", gen.strategy, "d5-diam strategy");
    gen_cmd->add_option("--radius", gen.radius, "circle/sphere radius (arc, sphere-n-diam)");
    gen_cmd->add_option("--seed", gen.seed, "seed for randomized steps");
    gen_cmd->add_option("--out", gen.out, "output path")->required();

    TableOptions table;
    CLI::App* table_cmd = app.add_subcommand("table", "tabulate a closed-form maximum");
    table_cmd->add_option("--formula", table.formula, "unit-even | unit-d4 | diam")->required();
    table_cmd->add_option("--d", table.d_range, "dimension or range A..B");
    table_cmd->add_option("--n", table.n_range, "point count or range A..B")->required();
    table_cmd->add_option("--format", table.format, "csv | json");
    table_cmd->add_option("--out", table.out, "output path (default stdout)");

    std::string in_path, count_kind = "unit";
    double tol_abs = 1e-9, epsilon = 1e-6;
    std::uint64_t det_seed = 0;
    CLI::App* count_cmd = app.add_subcommand("count", "count unit or diameter pairs in a file");
    count_cmd->add_option("--in", in_path, "input config")->required();
    count_cmd->add_option("--kind", count_kind, "unit | diam");
    count_cmd->add_option("--tol", tol_abs, "absolute distance tolerance");

    CLI::App* verify_cmd = app.add_subcommand("verify", "recount a config against its formula");
    verify_cmd->add_option("--in", in_path, "input config")->required();
    verify_cmd->add_option("--tol", tol_abs, "absolute distance tolerance");

    CLI::App* detect_cmd = app.add_subcommand("detect", "recover circle/sphere structure");
    detect_cmd->add_option("--in", in_path, "input config")->required();
    detect_cmd->add_option("--epsilon", epsilon, "inlier tolerance");
    detect_cmd->add_option("--seed", det_seed, "trial seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen_cmd->parsed()) return run_gen(gen);
        if (table_cmd->parsed()) return run_table(table);
        if (count_cmd->parsed()) return run_count(in_path, count_kind, tol_abs);
        if (verify_cmd->parsed()) return run_verify(in_path, tol_abs);
        if (detect_cmd->parsed()) return run_detect(in_path, epsilon, det_seed);
    } catch (const lenz::InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const lenz::Unachievable& e) {
        std::cerr << "unachievable: " << e.what() << "\n";
        return kExitConstruction;
    } catch (const lenz::ConstructionFailed& e) {
        std::cerr << "construction failed: " << e.what() << "\n";
        return kExitConstruction;
    } catch (const lenz::DegenerateInput& e) {
        std::cerr << "degenerate input: " << e.what() << "\n";
        return kExitConstruction;
    } catch (const lenz::ResourceLimit& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitConstruction;
    }
    return kExitUsage;
}
