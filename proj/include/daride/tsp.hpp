#pragma once

#include <utility>
#include <vector>

#include "daride/metric.hpp"

namespace daride {

struct Tour {
    std::vector<int> order;  // order[0] is the root; closes back to order[0]
    Rat length{0};           // includes the closing edge

    // distance walked along the tour from position i to position j (i <= j)
    Rat path_len(const Metric& m, int i, int j) const;
};

// MST over the given points (Prim, ties by lowest index); edges in point-index
// space together with the total length.
std::pair<std::vector<std::pair<int, int>>, Rat> mst_edges(const Metric& m,
                                                           const std::vector<int>& pts);

// Tree-doubling tour: preorder walk of the MST, shortcut to distinct vertices.
// Guarantees length <= 2 * MST length, which is asserted on every run.
Tour tsp_tour(const Metric& m, const std::vector<int>& vertices);

}  // namespace daride
