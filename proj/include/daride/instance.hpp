#pragma once

#include <optional>
#include <vector>

#include "daride/metric.hpp"

namespace daride {

struct Demand {
    int s = 0;
    int t = 0;
    long long w = 1;
};

// Depots form a multiset: one entry per vehicle, entries may repeat.
struct Instance {
    Metric metric;
    std::optional<WeightedGraph> graph;  // present for graph-backed instances
    std::vector<Demand> demands;
    std::vector<int> depots;
    long long capacity = 1;

    int n() const { return metric.n; }
    int m() const { return static_cast<int>(demands.size()); }
    int q() const { return static_cast<int>(depots.size()); }

    long long total_weight() const {
        long long w = 0;
        for (const auto& dm : demands) w += dm.w;
        return w;
    }
    bool unit_weights() const {
        for (const auto& dm : demands)
            if (dm.w != 1) return false;
        return true;
    }
    bool uncapacitated() const { return capacity >= total_weight(); }

    // Distinct depot vertices in ascending order.
    std::vector<int> distinct_depots() const;

    void check() const;  // throws std::invalid_argument on violation
};

}  // namespace daride
