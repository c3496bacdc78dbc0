#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lenz/point_config.hpp"

namespace lenz {

/// What a graph's edges mean.
enum class GraphKind {
    Unit,      // pairs at distance ~= 1
    Diameter,  // pairs realizing the maximum pairwise distance
};

/// Pairwise-distance graph over a point configuration.  Edges are stored as
/// index pairs (i, j) with i < j, sorted lexicographically, so two runs over
/// the same input produce byte-identical edge lists.
struct DistanceGraph {
    GraphKind kind = GraphKind::Unit;
    std::size_t n = 0;
    double target_length = 1.0;                    // the length edges were matched against
    std::vector<std::pair<int, int>> edges;

    [[nodiscard]] std::size_t edge_count() const { return edges.size(); }
    [[nodiscard]] std::vector<std::vector<int>> adjacency() const;
};

/// Largest pairwise distance.  Throws InvalidInput on fewer than two points or
/// non-finite coordinates.
[[nodiscard]] double diameter_of(const PointConfig& config);

/// Build the unit-distance or diameter graph of `config`.
///
/// For GraphKind::Unit the target length is 1; for GraphKind::Diameter it is
/// diameter_of(config).  A pair (i, j) becomes an edge when its distance is
/// within tol.slack(target) of the target.  Throws InvalidInput on fewer than
/// two points or non-finite coordinates.
[[nodiscard]] DistanceGraph build_distance_graph(const PointConfig& config,
                                                 GraphKind kind,
                                                 const TolerancePolicy& tol = {});

/// Result of a 2-colorability test.  When the graph is not bipartite,
/// `odd_cycle` holds the vertices of one odd cycle in traversal order.
struct BipartiteWitness {
    bool bipartite = false;
    std::vector<int> coloring;   // per-vertex color 0/1 (valid when bipartite)
    std::vector<int> odd_cycle;  // nonempty exactly when !bipartite
};

[[nodiscard]] BipartiteWitness is_bipartite_with_witness(const DistanceGraph& graph);

/// Decide whether `graph` contains a complete multipartite subgraph with
/// `classes` classes of exactly `class_size` vertices each (every cross-class
/// pair adjacent; within-class adjacency unconstrained).  Exact backtracking
/// search; throws ResourceLimit when classes * class_size > 64.
[[nodiscard]] bool contains_complete_multipartite(const DistanceGraph& graph,
                                                  int classes,
                                                  int class_size);

/// Enumerate every simple cycle (length >= 3) of a small graph, each cycle
/// reported once as a vertex sequence starting from its smallest vertex.
/// Intended for desk-scale checks; throws ResourceLimit when the graph has
/// more than 64 edges.
[[nodiscard]] std::vector<std::vector<int>> enumerate_simple_cycles(const DistanceGraph& graph);

} // namespace lenz
