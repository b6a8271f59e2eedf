#pragma once

#include <vector>

#include "daride/metric.hpp"

namespace daride {

enum class CoverMode { Sparse, Separated };

// Family of vertex clusters over the original graph vertices. In separated
// mode clusters carry a color partition with pairwise same-color distance at
// least gamma; in sparse mode every gamma-ball around a vertex is contained in
// some cluster and no colors are reported.
struct ClusterCover {
    std::vector<std::vector<int>> clusters;  // sorted original vertex ids
    std::vector<int> colors;                 // per cluster; empty in sparse mode
    long long gamma = 1;
    int r = 1;
    int num_colors = 0;
    Rat max_diameter{0};     // recorded empirical maximum
    int max_multiplicity = 0;

    // lowest-index cluster containing both u and v, -1 if none
    int co_cluster(int u, int v) const;
};

// Recursive BFS-band decomposition, r levels deep. The caller asserts minor
// freeness; the output invariants are checked here regardless, and a
// violation throws std::logic_error.
ClusterCover split_cover(const WeightedGraph& g, long long gamma, int r, CoverMode mode);

}  // namespace daride
