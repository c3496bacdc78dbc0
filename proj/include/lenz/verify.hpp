#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lenz/constructions.hpp"

namespace lenz {

/// Outcome of recounting a configuration against its matching closed form.
struct CountReport {
    std::string generator;        // from config meta
    GraphKind kind = GraphKind::Unit;
    std::int64_t achieved = 0;    // independent recount
    std::int64_t formula = 0;     // closed-form target
    bool match = false;
    std::string digest;           // content digest of the config
};

/// Recount a generated configuration's unit or diameter pairs from scratch
/// and compare against the closed-form value implied by its meta
/// ("generator", "d", "n", ...).  A mismatch is reported, not thrown; only a
/// config whose meta names no known generator is an InvalidInput.
[[nodiscard]] CountReport verify_construction(const ConstructionReport& report,
                                              const TolerancePolicy& tol = {});

/// Same, for a configuration loaded from disk (no sidecar counts available).
[[nodiscard]] CountReport verify_config(const PointConfig& config,
                                        const TolerancePolicy& tol = {});

/// One property checked over a parameter sweep.
struct InvariantResult {
    std::string name;
    bool passed = false;
    std::string detail;  // first counterexample or summary statistics
};

struct InvariantReport {
    std::vector<InvariantResult> results;
    [[nodiscard]] bool all_passed() const {
        for (const auto& r : results)
            if (!r.passed) return false;
        return true;
    }
};

/// Run the bundled property sweeps.  Scopes: "formulas", "geometry",
/// "constructions", "sphere", or "all"; unknown or empty scope yields an
/// empty report.  Every sweep is deterministic and desk-scale (seconds).
[[nodiscard]] InvariantReport run_invariant_suite(const std::string& scope);

/// FNV-1a content digest of dimension + coordinates (17 significant digits),
/// as a 16-hex-digit string.  Stable across platforms and runs.
[[nodiscard]] std::string config_digest(const PointConfig& config);

} // namespace lenz
