#pragma once

#include <cstdint>
#include <vector>

#include "daride/metric.hpp"

namespace daride {

// Hierarchically well-separated tree from a randomized embedding. Every tree
// distance dominates the metric distance exactly, and edge lengths halve with
// each level down.
struct HstNode {
    int parent = -1;
    Rat edge_len{0};     // length of the edge to the parent, 0 at the root
    int level = 0;       // partition level; children sit one level lower
    int center = -1;     // metric vertex that captured this cluster
    int leaf_vertex = -1;  // >= 0 iff this node is a leaf
    std::vector<int> children;
};

struct HstTree {
    std::vector<HstNode> nodes;
    int root = -1;
    std::vector<int> leaf_of;  // metric vertex -> leaf node id

    Rat kappa(int u, int v) const;  // tree distance between the leaves of u and v
    int depth() const;              // max edge count on a root-leaf path
    int lca(int node_a, int node_b) const;
    // Dominance, geometric decay, bijection, depth bound. Throws on violation.
    void check(const Metric& m) const;
};

// Random permutation plus one random radius scalar beta in [1,2), standard
// hierarchical ball carving; deterministic given the seed.
HstTree frt_embed(const Metric& m, std::uint64_t seed);

}  // namespace daride
