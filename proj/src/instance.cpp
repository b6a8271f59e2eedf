#include "daride/instance.hpp"

#include <algorithm>
#include <stdexcept>

namespace daride {

std::vector<int> Instance::distinct_depots() const {
    std::vector<int> d = depots;
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    return d;
}

void Instance::check() const {
    metric.check();
    if (graph) {
        graph->check();
        if (graph->n < metric.n)
            throw std::invalid_argument("instance: graph smaller than metric");
    }
    if (depots.empty()) throw std::invalid_argument("instance: no vehicles");
    if (capacity < 1) throw std::invalid_argument("instance: capacity < 1");
    for (int r : depots)
        if (r < 0 || r >= n()) throw std::invalid_argument("instance: depot out of range");
    for (const auto& dm : demands) {
        if (dm.s < 0 || dm.s >= n() || dm.t < 0 || dm.t >= n())
            throw std::invalid_argument("instance: demand endpoint out of range");
        if (dm.w <= 0) throw std::invalid_argument("instance: nonpositive weight");
        if (dm.w > capacity) throw std::invalid_argument("instance: weight exceeds capacity");
    }
}

}  // namespace daride
