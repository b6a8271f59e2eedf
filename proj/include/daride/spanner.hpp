#pragma once

#include <utility>
#include <vector>

#include "daride/metric.hpp"

namespace daride {

// Greedy hop-spanner of a simple demand graph: an edge joins the spanner iff
// the current spanner has no path of at most 2*alpha hops between its
// endpoints. Afterwards every edge is assigned to one endpoint so that no
// vertex owns more than two edges.
struct Spanner {
    int n = 0;
    int alpha = 0;
    std::vector<std::pair<int, int>> edges;   // subset A of the input edges
    std::vector<std::vector<int>> assigned;   // vertex -> indices into `edges`

    // hop distance inside A, -1 if disconnected
    int hop_dist(int u, int v, int skip_edge = -1) const;
    // stretch, girth, degree-assignment invariants; throws on violation
    void check(const std::vector<std::pair<int, int>>& input_edges) const;
};

// demand_edges: undirected pairs, duplicates and orientation ignored.
// Insertion order is (min,max)-sorted so results are reproducible.
Spanner sparse_spanner(int n, std::vector<std::pair<int, int>> demand_edges, int alpha);

}  // namespace daride
