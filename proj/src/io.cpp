#include "lenz/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lenz/errors.hpp"

namespace lenz {

namespace {

using nlohmann::json;

constexpr const char* kConfigSchema = "pointconfig/1";
constexpr const char* kReportSchema = "constructionreport/1";

// 17 significant digits round-trips IEEE doubles exactly and keeps the writer
// byte-stable, independent of any JSON library's float policy.
std::string full_precision(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open \"" + path + "\" for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidInput("cannot open \"" + path + "\" for writing");
    out << text;
    if (!out) throw InvalidInput("short write to \"" + path + "\"");
}

} // namespace

std::string config_to_json(const PointConfig& config) {
    std::ostringstream os;
    os << "{\"schema\":" << json(kConfigSchema).dump() << ",\"dim\":" << config.dim()
       << ",\"points\":[";
    for (Eigen::Index j = 0; j < config.size(); ++j) {
        if (j) os << ',';
        os << '[';
        for (Eigen::Index i = 0; i < config.dim(); ++i) {
            if (i) os << ',';
            os << full_precision(config.points(i, j));
        }
        os << ']';
    }
    os << "],\"meta\":{";
    bool first = true;
    for (const auto& [key, value] : config.meta) {
        if (!first) os << ',';
        first = false;
        os << json(key).dump() << ':' << json(value).dump();
    }
    os << "}}\n";
    return os.str();
}

void write_config(const PointConfig& config, const std::string& path) {
    write_file(path, config_to_json(config));
}

PointConfig config_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("config parse error: ") + e.what());
    }
    if (!doc.is_object() || doc.value("schema", "") != kConfigSchema)
        throw InvalidInput("config parse error: missing or unsupported schema tag (expected \"" +
                           std::string(kConfigSchema) + "\")");
    if (!doc.contains("dim") || !doc["dim"].is_number_integer())
        throw InvalidInput("config parse error: \"dim\" must be an integer");
    const auto dim = doc["dim"].get<Eigen::Index>();
    if (dim < 1) throw InvalidInput("config parse error: dim must be >= 1");
    if (!doc.contains("points") || !doc["points"].is_array())
        throw InvalidInput("config parse error: \"points\" must be an array");

    const auto& pts = doc["points"];
    PointConfig config;
    config.points.resize(dim, static_cast<Eigen::Index>(pts.size()));
    for (std::size_t j = 0; j < pts.size(); ++j) {
        const auto& row = pts[j];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim)
            throw InvalidInput("config parse error: point " + std::to_string(j) + " has " +
                               std::to_string(row.size()) + " coordinates, expected " +
                               std::to_string(dim));
        for (Eigen::Index i = 0; i < dim; ++i) {
            if (!row[static_cast<std::size_t>(i)].is_number())
                throw InvalidInput("config parse error: non-numeric coordinate in point " +
                                   std::to_string(j));
            config.points(i, static_cast<Eigen::Index>(j)) =
                row[static_cast<std::size_t>(i)].get<double>();
        }
    }
    if (doc.contains("meta")) {
        if (!doc["meta"].is_object())
            throw InvalidInput("config parse error: \"meta\" must be an object");
        for (const auto& [key, value] : doc["meta"].items()) {
            if (!value.is_string())
                throw InvalidInput("config parse error: meta values must be strings");
            config.meta[key] = value.get<std::string>();
        }
    }
    return config;
}

PointConfig read_config(const std::string& path) { return config_from_json(read_file(path)); }

std::string report_to_json(const ConstructionReport& report) {
    json doc;
    doc["schema"] = kReportSchema;
    const auto gen = report.config.meta.find("generator");
    doc["generator"] = gen == report.config.meta.end() ? "" : gen->second;
    doc["kind"] = report.kind == GraphKind::Unit ? "unit" : "diam";
    doc["expected_count"] = report.expected_count;
    doc["achieved_count"] = report.achieved_count;
    doc["match"] = report.match();
    doc["config_digest"] = config_digest(report.config);
    doc["meta"] = report.config.meta;
    if (report.solver) {
        doc["solver"] = {{"grid_samples", report.solver->grid_samples},
                         {"bisection_iterations", report.solver->bisection_iterations},
                         {"radius", report.solver->radius},
                         {"final_residual", report.solver->final_residual}};
    } else {
        doc["solver"] = nullptr;
    }
    return doc.dump(2) + "\n";
}

void write_report(const ConstructionReport& report, const std::string& path) {
    write_file(path, report_to_json(report));
}

SidecarReport read_report(const std::string& path) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("report parse error: ") + e.what());
    }
    if (!doc.is_object() || doc.value("schema", "") != kReportSchema)
        throw InvalidInput("report parse error: missing or unsupported schema tag");
    SidecarReport rep;
    try {
        rep.generator = doc.at("generator").get<std::string>();
        rep.kind = doc.at("kind").get<std::string>();
        rep.expected_count = doc.at("expected_count").get<std::int64_t>();
        rep.achieved_count = doc.at("achieved_count").get<std::int64_t>();
        rep.digest = doc.at("config_digest").get<std::string>();
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("report parse error: ") + e.what());
    }
    return rep;
}

std::string count_report_to_json(const CountReport& report) {
    json doc;
    doc["generator"] = report.generator;
    doc["kind"] = report.kind == GraphKind::Unit ? "unit" : "diam";
    doc["achieved"] = report.achieved;
    doc["formula"] = report.formula;
    doc["match"] = report.match;
    doc["digest"] = report.digest;
    return doc.dump(2) + "\n";
}

std::string detected_to_json(const DetectedStructure& s) {
    json doc;
    doc["epsilon"] = s.epsilon_used;
    doc["pairwise_orthogonal"] = s.pairwise_orthogonal;
    doc["radius_identity_ok"] = s.radius_identity_ok;
    doc["classes"] = json::array();
    for (const auto& cls : s.classes) {
        json c;
        c["kind"] = cls.fit.rank() == 3 ? "sphere" : "circle";
        c["members"] = cls.members;
        c["radius"] = cls.fit.radius;
        c["center"] = std::vector<double>(cls.fit.center.data(),
                                          cls.fit.center.data() + cls.fit.center.size());
        doc["classes"].push_back(std::move(c));
    }
    doc["residual"] = s.residual;
    if (s.common_center.size() > 0)
        doc["common_center"] = std::vector<double>(
            s.common_center.data(), s.common_center.data() + s.common_center.size());
    return doc.dump(2) + "\n";
}

} // namespace lenz
