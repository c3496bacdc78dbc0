#include "lenz/detect.hpp"

#include <algorithm>
#include <cmath>

#include "lenz/errors.hpp"
#include "rng_util.hpp"

namespace lenz {

namespace {

constexpr int kTrialsPerRound = 256;
constexpr int kMinCircleClass = 4;
constexpr int kMinSphereClass = 5;

// Span thresholds used when refitting a candidate class: a direction counts
// toward the flat when its singular value clears a multiple of epsilon scaled
// by sqrt(#points) (a coordinate jitter of eps over k points contributes a
// singular value of about eps * sqrt(k)).
double span_cut(double epsilon, std::size_t count) {
    return 32.0 * epsilon * std::sqrt(static_cast<double>(count)) + 1e-12;
}

Eigen::MatrixXd gather(const Eigen::MatrixXd& pts, const std::vector<int>& idx) {
    Eigen::MatrixXd out(pts.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = pts.col(idx[i]);
    return out;
}

std::vector<int> collect_inliers(const Eigen::MatrixXd& pts, const std::vector<int>& pool,
                                 const SphereFit& fit, double epsilon) {
    std::vector<int> in;
    for (int idx : pool)
        if (distance_to_sphere(fit, pts.col(idx)) <= epsilon) in.push_back(idx);
    return in;
}

// A true class is orthogonal, about its own center, to every point outside it.
// A contaminated candidate (e.g. a full circle class plus a borrowed point of
// a sibling class of equal radius, which is exactly cospherical with it) sees
// the borrowed point's class-mates inside its span and fails this test.
bool externally_orthogonal(const Eigen::MatrixXd& pts, const std::vector<int>& pool,
                           const std::vector<int>& members, const SphereFit& fit,
                           double epsilon) {
    const double tol = 64.0 * epsilon;
    for (int q : pool) {
        if (std::binary_search(members.begin(), members.end(), q)) continue;
        const Eigen::VectorXd v = pts.col(q) - fit.center;
        if ((fit.basis.transpose() * v).cwiseAbs().maxCoeff() > tol) return false;
    }
    return true;
}

// Sample k distinct indices from pool (uniform, deterministic stream).
std::vector<int> sample_distinct(std::mt19937_64& rng, const std::vector<int>& pool, int k) {
    std::vector<int> picked;
    while (static_cast<int>(picked.size()) < k) {
        const int cand = pool[detail::uniform_index(rng, pool.size())];
        if (std::find(picked.begin(), picked.end(), cand) == picked.end())
            picked.push_back(cand);
    }
    return picked;
}

struct Candidate {
    std::vector<int> members;
    SphereFit fit;
    bool valid = false;
    bool externally_ok = false;
};

// Externally orthogonal candidates beat contaminated ones regardless of size;
// within the same flag, more members win.  Ties keep the incumbent.
bool improves(const Candidate& challenger, const Candidate& incumbent) {
    if (!challenger.valid) return false;
    if (!incumbent.valid) return true;
    if (challenger.externally_ok != incumbent.externally_ok) return challenger.externally_ok;
    return challenger.members.size() > incumbent.members.size();
}

// Fit a circle (rank 2) or sphere (rank 3) through exactly the seed points;
// returns an invalid candidate when the seed is degenerate for that rank.
Candidate seed_fit(const Eigen::MatrixXd& pts, const std::vector<int>& pool,
                   const std::vector<int>& seed, int want_rank, double epsilon) {
    Candidate cand;
    const Eigen::MatrixXd sample = gather(pts, seed);
    const AffineSpan span = affine_span(sample, span_cut(epsilon, seed.size()));
    if (span.rank() != want_rank) return cand;
    SphereFit fit;
    try {
        fit = fit_sphere(sample, span_cut(epsilon, seed.size()));
    } catch (const DegenerateInput&) {
        return cand;
    }
    if (fit.rank() != want_rank) return cand;
    cand.members = collect_inliers(pts, pool, fit, epsilon);
    cand.fit = fit;
    const int min_size = (want_rank == 2) ? kMinCircleClass : kMinSphereClass;
    cand.valid = static_cast<int>(cand.members.size()) >= min_size;
    if (cand.valid)
        cand.externally_ok = externally_orthogonal(pts, pool, cand.members, fit, epsilon);
    return cand;
}

// Refit on the inlier set, letting the data decide circle vs sphere, then
// recollect inliers once.  Falls back to the original candidate on failure.
Candidate refit(const Eigen::MatrixXd& pts, const std::vector<int>& pool, Candidate cand,
                double epsilon) {
    try {
        const Eigen::MatrixXd sample = gather(pts, cand.members);
        const SphereFit fit = fit_sphere(sample, span_cut(epsilon, cand.members.size()));
        if (fit.rank() == 2 || fit.rank() == 3) {
            Candidate out;
            out.fit = fit;
            out.members = collect_inliers(pts, pool, fit, epsilon);
            const int min_size = (fit.rank() == 2) ? kMinCircleClass : kMinSphereClass;
            out.valid = static_cast<int>(out.members.size()) >= min_size;
            if (out.valid)
                out.externally_ok =
                    externally_orthogonal(pts, pool, out.members, fit, epsilon);
            if (out.valid && out.members.size() >= cand.members.size() &&
                (out.externally_ok || !cand.externally_ok))
                return out;
        }
    } catch (const DegenerateInput&) {
    }
    return cand;
}

// The unique 2-sphere through a circle class and one off-plane point: its
// center moves off the circle plane along the point's out-of-plane direction.
bool sphere_through(const SphereFit& circle, const Eigen::VectorXd& q, SphereFit& out) {
    if (circle.rank() != 2) return false;
    const Eigen::VectorXd w0 = q - circle.center;
    Eigen::VectorXd w = w0 - circle.basis * (circle.basis.transpose() * w0);
    const double off = w.norm();
    if (off < 1e-9) return false;  // q is (numerically) coplanar with the circle
    w /= off;
    const double t = (w0.squaredNorm() - circle.radius * circle.radius) / (2.0 * off);
    SphereFit s;
    s.center = circle.center + t * w;
    s.radius = std::sqrt(circle.radius * circle.radius + t * t);
    s.basis.resize(circle.basis.rows(), 3);
    s.basis.leftCols(2) = circle.basis;
    s.basis.col(2) = w;
    s.residual = 0.0;
    out = s;
    return true;
}

// A circle candidate that is really a slice of a 2-sphere class (a ring whose
// pole or apex lies off-plane) only reveals the sphere once that off-plane
// member joins.  Try every remaining point as the extra member and keep the
// best resulting sphere; contaminated upgrades lose on external orthogonality.
Candidate expand_to_sphere(const Eigen::MatrixXd& pts, const std::vector<int>& pool,
                           const Candidate& circle, double epsilon) {
    Candidate best = circle;
    for (int q : pool) {
        if (std::binary_search(circle.members.begin(), circle.members.end(), q)) continue;
        SphereFit up;
        if (!sphere_through(circle.fit, pts.col(q), up)) continue;
        Candidate cand;
        cand.fit = up;
        cand.members = collect_inliers(pts, pool, up, epsilon);
        cand.valid = static_cast<int>(cand.members.size()) >= kMinSphereClass;
        if (cand.valid)
            cand.externally_ok = externally_orthogonal(pts, pool, cand.members, up, epsilon);
        if (improves(cand, best)) best = std::move(cand);
    }
    return best;
}

} // namespace

DetectedStructure detect_lenz(const PointConfig& config, double epsilon, std::uint64_t seed) {
    if (config.size() < 1) throw InvalidInput("detect_lenz: empty configuration");
    if (!(epsilon > 0.0)) throw InvalidInput("detect_lenz: epsilon must be positive");
    const Eigen::MatrixXd& pts = config.points;

    DetectedStructure result;
    result.epsilon_used = epsilon;

    std::vector<int> remaining(config.size());
    for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = static_cast<int>(i);

    // --- greedy extraction -------------------------------------------------
    for (std::uint64_t round = 0; remaining.size() >= kMinCircleClass; ++round) {
        Candidate best;
        for (int trial = 0; trial < kTrialsPerRound; ++trial) {
            std::mt19937_64 rng(detail::mix_seed(seed, round, static_cast<std::uint64_t>(trial)));
            const std::vector<int> four = sample_distinct(
                rng, remaining, std::min<int>(4, static_cast<int>(remaining.size())));
            if (four.size() >= 3) {
                const std::vector<int> three(four.begin(), four.begin() + 3);
                Candidate c = seed_fit(pts, remaining, three, 2, epsilon);
                if (improves(c, best)) best = std::move(c);
            }
            if (four.size() == 4) {
                Candidate c = seed_fit(pts, remaining, four, 3, epsilon);
                if (improves(c, best)) best = std::move(c);
            }
        }
        if (!best.valid) break;
        best = refit(pts, remaining, std::move(best), epsilon);
        if (best.fit.rank() == 2) {
            Candidate expanded = expand_to_sphere(pts, remaining, best, epsilon);
            if (expanded.members.size() != best.members.size())
                best = refit(pts, remaining, std::move(expanded), epsilon);
        }

        DetectedClass cls;
        cls.members = best.members;
        std::sort(cls.members.begin(), cls.members.end());
        cls.fit = best.fit;
        result.classes.push_back(std::move(cls));

        std::vector<int> next;
        for (int idx : remaining)
            if (!std::binary_search(result.classes.back().members.begin(),
                                    result.classes.back().members.end(), idx))
                next.push_back(idx);
        remaining = std::move(next);
    }

    // --- absorb leftovers --------------------------------------------------
    // A leftover may lie on an already-extracted sphere, or it may be the one
    // off-plane point (a pole) that upgrades a circle class to a 2-sphere.
    std::vector<int> leftovers = remaining;
    remaining.clear();
    for (int q : leftovers) {
        bool absorbed = false;
        for (auto& cls : result.classes) {
            if (distance_to_sphere(cls.fit, pts.col(q)) <= epsilon) {
                cls.members.insert(std::lower_bound(cls.members.begin(), cls.members.end(), q), q);
                absorbed = true;
                break;
            }
            SphereFit upgraded;
            if (cls.fit.rank() == 2 && sphere_through(cls.fit, pts.col(q), upgraded)) {
                bool all_fit = true;
                for (int idx : cls.members)
                    if (distance_to_sphere(upgraded, pts.col(idx)) > epsilon) {
                        all_fit = false;
                        break;
                    }
                // other leftovers must either join the upgraded sphere later
                // or stay orthogonal to it; otherwise the upgrade is bogus
                if (all_fit) {
                    const double tol = 64.0 * epsilon;
                    for (int other : leftovers) {
                        if (other == q ||
                            std::binary_search(cls.members.begin(), cls.members.end(), other) ||
                            distance_to_sphere(upgraded, pts.col(other)) <= epsilon)
                            continue;
                        const Eigen::VectorXd v = pts.col(other) - upgraded.center;
                        if ((upgraded.basis.transpose() * v).cwiseAbs().maxCoeff() > tol) {
                            all_fit = false;
                            break;
                        }
                    }
                }
                if (all_fit && static_cast<int>(cls.members.size()) + 1 >= kMinSphereClass) {
                    cls.fit = upgraded;
                    cls.members.insert(
                        std::lower_bound(cls.members.begin(), cls.members.end(), q), q);
                    absorbed = true;
                    break;
                }
            }
        }
        if (!absorbed) remaining.push_back(q);
    }
    // refit every class on its final membership for clean reported geometry
    for (auto& cls : result.classes) {
        try {
            cls.fit = fit_sphere(gather(pts, cls.members),
                                 span_cut(epsilon, cls.members.size()));
        } catch (const DegenerateInput&) {
            // keep the candidate fit
        }
    }

    // --- global consistency ------------------------------------------------
    // Keep the maximal prefix (in extraction order) of classes that share a
    // center and are mutually orthogonal within epsilon; dissolve the rest.
    std::vector<DetectedClass> kept;
    for (auto& cls : result.classes) {
        bool ok = cls.fit.rank() == 2 || cls.fit.rank() == 3;
        for (const auto& prev : kept) {
            if (!ok) break;
            const double center_gap = (cls.fit.center - prev.fit.center).norm();
            const double cross =
                (cls.fit.basis.transpose() * prev.fit.basis).cwiseAbs().maxCoeff();
            if (center_gap > epsilon || cross > epsilon) ok = false;
        }
        if (ok) {
            kept.push_back(std::move(cls));
        } else {
            for (int idx : cls.members) remaining.push_back(idx);
        }
    }
    result.classes = std::move(kept);
    std::sort(remaining.begin(), remaining.end());
    result.residual = std::move(remaining);

    if (!result.classes.empty()) {
        result.common_center = Eigen::VectorXd::Zero(pts.rows());
        for (const auto& cls : result.classes) result.common_center += cls.fit.center;
        result.common_center /= static_cast<double>(result.classes.size());
        result.pairwise_orthogonal = true;  // enforced above
        result.radius_identity_ok = true;
        for (std::size_t i = 0; i < result.classes.size(); ++i)
            for (std::size_t j = i + 1; j < result.classes.size(); ++j) {
                const double ri = result.classes[i].fit.radius;
                const double rj = result.classes[j].fit.radius;
                if (std::abs(ri * ri + rj * rj - 1.0) > std::max(1e-9, 32.0 * epsilon))
                    result.radius_identity_ok = false;
            }
    } else {
        result.common_center = Eigen::VectorXd::Zero(pts.rows());
        result.pairwise_orthogonal = false;
        result.radius_identity_ok = false;
    }
    return result;
}

} // namespace lenz
