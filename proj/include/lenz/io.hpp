#pragma once

#include <string>

#include "lenz/constructions.hpp"
#include "lenz/detect.hpp"
#include "lenz/verify.hpp"

namespace lenz {

/// On-disk format: {"schema": "pointconfig/1", "dim": d, "points": [[...]],
/// "meta": {...}}.  Coordinates are written as decimal literals with 17
/// significant digits, which round-trips IEEE doubles exactly, and the
/// writer's output is byte-stable for a fixed config.
[[nodiscard]] std::string config_to_json(const PointConfig& config);
void write_config(const PointConfig& config, const std::string& path);

/// Parse / load a pointconfig/1 document.  Throws InvalidInput on a missing
/// or wrong schema tag, ragged rows, non-numeric coordinates, or dim
/// mismatch.
[[nodiscard]] PointConfig config_from_json(const std::string& text);
[[nodiscard]] PointConfig read_config(const std::string& path);

/// Sidecar report ({"schema": "constructionreport/1", ...}) written next to a
/// generated config: expected/achieved counts, graph kind, solver stats when
/// present, and the config digest.
[[nodiscard]] std::string report_to_json(const ConstructionReport& report);
void write_report(const ConstructionReport& report, const std::string& path);

/// Minimal view of a sidecar, enough to re-verify a config against it.
struct SidecarReport {
    std::string generator;
    std::string kind;  // "unit" | "diam"
    std::int64_t expected_count = 0;
    std::int64_t achieved_count = 0;
    std::string digest;
};
[[nodiscard]] SidecarReport read_report(const std::string& path);

/// JSON renderings for CLI output.
[[nodiscard]] std::string count_report_to_json(const CountReport& report);
[[nodiscard]] std::string detected_to_json(const DetectedStructure& s);

} // namespace lenz
