#include "lenz/distance_graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "lenz/errors.hpp"

namespace lenz {

namespace {

void require_usable(const PointConfig& config, const char* op) {
    if (config.size() < 2)
        throw InvalidInput(std::string(op) + ": need at least 2 points, got " +
                           std::to_string(config.size()));
    if (!config.points.allFinite())
        throw InvalidInput(std::string(op) + ": non-finite coordinate");
}

} // namespace

std::vector<std::vector<int>> DistanceGraph::adjacency() const {
    std::vector<std::vector<int>> adj(n);
    for (auto [i, j] : edges) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    return adj;
}

double diameter_of(const PointConfig& config) {
    require_usable(config, "diameter_of");
    const auto n = config.size();
    double best = 0.0;
    for (Eigen::Index i = 0; i + 1 < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            best = std::max(best, (config.points.col(i) - config.points.col(j)).norm());
    return best;
}

DistanceGraph build_distance_graph(const PointConfig& config, GraphKind kind,
                                   const TolerancePolicy& tol) {
    require_usable(config, "build_distance_graph");
    const auto n = config.size();
    DistanceGraph g;
    g.kind = kind;
    g.n = static_cast<std::size_t>(n);
    g.target_length = (kind == GraphKind::Unit) ? 1.0 : diameter_of(config);
    for (Eigen::Index i = 0; i + 1 < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double d = (config.points.col(i) - config.points.col(j)).norm();
            if (tol.matches(d, g.target_length))
                g.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    // the scan above already yields lexicographic order; keep the guarantee
    // explicit in case the loop is ever restructured
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

BipartiteWitness is_bipartite_with_witness(const DistanceGraph& graph) {
    const int n = static_cast<int>(graph.n);
    const auto adj = graph.adjacency();
    BipartiteWitness w;
    w.coloring.assign(n, -1);
    std::vector<int> parent(n, -1);

    for (int root = 0; root < n; ++root) {
        if (w.coloring[root] != -1) continue;
        w.coloring[root] = 0;
        std::vector<int> queue{root};
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const int u = queue[head];
            for (int v : adj[u]) {
                if (w.coloring[v] == -1) {
                    w.coloring[v] = 1 - w.coloring[u];
                    parent[v] = u;
                    queue.push_back(v);
                } else if (w.coloring[v] == w.coloring[u]) {
                    // odd cycle: walk both endpoints up to their BFS meeting point
                    std::vector<int> up_u{u}, up_v{v};
                    auto depth = [&](int x) {
                        int k = 0;
                        for (int y = x; parent[y] != -1; y = parent[y]) ++k;
                        return k;
                    };
                    int a = u, b = v, da = depth(u), db = depth(v);
                    while (da > db) { a = parent[a]; up_u.push_back(a); --da; }
                    while (db > da) { b = parent[b]; up_v.push_back(b); --db; }
                    while (a != b) {
                        a = parent[a]; up_u.push_back(a);
                        b = parent[b]; up_v.push_back(b);
                    }
                    w.odd_cycle.assign(up_u.begin(), up_u.end());
                    w.odd_cycle.insert(w.odd_cycle.end(), up_v.rbegin() + 1, up_v.rend());
                    w.bipartite = false;
                    return w;
                }
            }
        }
    }
    w.bipartite = true;
    return w;
}

namespace {

// Backtracking class-system search over word-packed vertex pools.  Classes are
// canonicalized by ascending minimum vertex, so every unordered family is
// visited at most once.  Before a class is enumerated the pool is shrunk to a
// fixpoint of "v keeps >= class_size * (remaining - 1) pool neighbours"; that
// is what lets the search terminate quickly on graphs whose candidate pools
// collapse into a sparse remnant (e.g. a single circle class).
struct MultipartiteSearch {
    int n = 0, class_size = 0, words = 0;
    std::vector<std::vector<std::uint64_t>> adj;

    bool test(const std::vector<std::uint64_t>& m, int v) const {
        return (m[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1u;
    }
    static int count(const std::vector<std::uint64_t>& m) {
        int c = 0;
        for (std::uint64_t x : m) c += std::popcount(x);
        return c;
    }
    int pool_degree(const std::vector<std::uint64_t>& pool, int v) const {
        int c = 0;
        for (int k = 0; k < words; ++k) c += std::popcount(pool[k] & adj[v][k]);
        return c;
    }

    // Necessary condition on every future class member: enough neighbours left
    // in the pool to fill all *other* remaining classes.  Iterate to fixpoint;
    // report whether the pool can still hold `remaining` full classes.
    bool viable(std::vector<std::uint64_t>& pool, int remaining) const {
        const int cross = class_size * (remaining - 1);
        for (bool changed = true; changed;) {
            changed = false;
            for (int v = 0; v < n; ++v)
                if (test(pool, v) && pool_degree(pool, v) < cross) {
                    pool[static_cast<std::size_t>(v) >> 6] &= ~(1ULL << (v & 63));
                    changed = true;
                }
        }
        return count(pool) >= class_size * remaining;
    }

    bool search(std::vector<std::uint64_t> pool, int remaining) const {
        if (remaining == 0) return true;
        if (!viable(pool, remaining)) return false;
        std::vector<int> live;
        live.reserve(static_cast<std::size_t>(count(pool)));
        for (int v = 0; v < n; ++v)
            if (test(pool, v)) live.push_back(v);
        // future = pool restricted to vertices above the class minimum and
        // adjacent to every member picked so far; mates themselves need no
        // mutual adjacency, only an index above the minimum
        auto pick_mates = [&](auto&& self, std::size_t start, int left,
                              std::vector<std::uint64_t> future) -> bool {
            if (count(future) < class_size * (remaining - 1)) return false;
            if (left == 0) return search(std::move(future), remaining - 1);
            for (std::size_t t = start; t < live.size(); ++t) {
                const int v = live[t];
                std::vector<std::uint64_t> next(future);
                for (int k = 0; k < words; ++k) next[k] &= adj[v][k];
                if (self(self, t + 1, left - 1, std::move(next))) return true;
            }
            return false;
        };
        for (std::size_t t = 0; t < live.size(); ++t) {
            const int m = live[t];
            std::vector<std::uint64_t> future(pool);
            for (int k = 0; k < words; ++k) future[k] &= adj[m][k];
            // clear indices <= m: later classes sit strictly above the minimum
            for (int k = 0; k <= (m >> 6); ++k)
                future[static_cast<std::size_t>(k)] &=
                    (k == (m >> 6)) ? ~((~0ULL) >> (63 - (m & 63))) : 0ULL;
            if (pick_mates(pick_mates, t + 1, class_size - 1, std::move(future))) return true;
        }
        return false;
    }
};

} // namespace

bool contains_complete_multipartite(const DistanceGraph& graph, int classes, int class_size) {
    if (classes < 1 || class_size < 1)
        throw InvalidInput("contains_complete_multipartite: classes and class_size must be >= 1");
    const std::int64_t need = static_cast<std::int64_t>(classes) * class_size;
    if (need > 64)
        throw ResourceLimit("contains_complete_multipartite: classes * class_size = " +
                            std::to_string(need) + " exceeds the guard of 64");
    const int n = static_cast<int>(graph.n);
    if (need > n) return false;

    MultipartiteSearch s;
    s.n = n;
    s.class_size = class_size;
    s.words = (n + 63) / 64;
    s.adj.assign(static_cast<std::size_t>(n),
                 std::vector<std::uint64_t>(static_cast<std::size_t>(s.words), 0));
    for (auto [i, j] : graph.edges) {
        s.adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j) >> 6] |= 1ULL << (j & 63);
        s.adj[static_cast<std::size_t>(j)][static_cast<std::size_t>(i) >> 6] |= 1ULL << (i & 63);
    }
    std::vector<std::uint64_t> pool(static_cast<std::size_t>(s.words), 0);
    for (int v = 0; v < n; ++v) pool[static_cast<std::size_t>(v) >> 6] |= 1ULL << (v & 63);
    return s.search(std::move(pool), classes);
}

std::vector<std::vector<int>> enumerate_simple_cycles(const DistanceGraph& graph) {
    if (graph.edges.size() > 64)
        throw ResourceLimit("enumerate_simple_cycles: graph has " +
                            std::to_string(graph.edges.size()) + " edges (limit 64)");
    const int n = static_cast<int>(graph.n);
    const auto adj = graph.adjacency();
    std::vector<std::vector<int>> cycles;
    std::vector<int> path;
    std::vector<char> on_path(n, 0);

    // each cycle is produced exactly once: smallest vertex first, second
    // vertex smaller than the last to kill the two traversal directions
    auto dfs = [&](auto&& self, int start, int u) -> void {
        for (int v : adj[u]) {
            if (v == start && path.size() >= 3) {
                if (path[1] < path.back()) cycles.push_back(path);
                continue;
            }
            if (v <= start || on_path[v]) continue;
            on_path[v] = 1;
            path.push_back(v);
            self(self, start, v);
            path.pop_back();
            on_path[v] = 0;
        }
    };
    for (int start = 0; start < n; ++start) {
        path.assign(1, start);
        on_path.assign(n, 0);
        on_path[start] = 1;
        dfs(dfs, start, start);
    }
    return cycles;
}

} // namespace lenz
