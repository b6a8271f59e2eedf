#pragma once

#include <optional>
#include <vector>

#include "daride/rational.hpp"

namespace daride {

// Connected edge-weighted graph with positive integer lengths.
struct WeightedGraph {
    struct Edge {
        int u = 0;
        int v = 0;
        long long len = 1;
    };

    int n = 0;
    std::vector<Edge> edges;

    // adjacency as (neighbor, edge index)
    std::vector<std::vector<std::pair<int, int>>> adjacency() const;
    bool connected() const;
    void check() const;  // throws std::invalid_argument on violation
};

// Finite metric: symmetric nonnegative distance matrix with zero diagonal
// satisfying the triangle inequality. Distances are exact rationals.
struct Metric {
    int n = 0;
    std::vector<Rat> d;  // row-major n*n

    Metric() = default;
    explicit Metric(int n_) : n(n_), d(static_cast<std::size_t>(n_) * n_, Rat(0)) {}

    const Rat& at(int u, int v) const { return d[static_cast<std::size_t>(u) * n + v]; }
    Rat& at(int u, int v) { return d[static_cast<std::size_t>(u) * n + v]; }

    void check() const;  // throws on symmetry/diagonal/triangle violation
    Rat diameter() const;
    // Smallest nonzero pairwise distance; nullopt when n < 2 or all zero.
    std::optional<Rat> min_nonzero() const;
    // Restriction to a vertex subset (order preserved).
    Metric induced(const std::vector<int>& verts) const;
};

// All-pairs shortest paths under g's edge lengths. Throws if g is disconnected.
Metric metric_from_graph(const WeightedGraph& g);

// Unit-length graph whose distances between original vertices equal the
// input's; edge (u,v,w) becomes a path of w/unit edges of length `unit`.
// Original vertices keep their ids; subdivision vertices are appended.
WeightedGraph edge_subdivide(const WeightedGraph& g, long long unit = 1);

}  // namespace daride
