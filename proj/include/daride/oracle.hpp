#pragma once

#include <vector>

#include "daride/instance.hpp"
#include "daride/schedule.hpp"

namespace daride {

struct OracleResult {
    Rat optimum{0};
    Schedule witness;  // feasible under validate; barrier makespan >= optimum
};

// Exact minimum makespan over timestamped preemptive schedules: depth-first
// search over per-vehicle event sequences (move, then drops, then picks that
// may wait for another vehicle's drop), iterative deepening on the makespan
// with the combined lower bound as the initial limit, Pareto-dominance
// memoization on (positions, object locations, time vectors).
// Limits: n <= 6, m <= 3, q <= 2, k <= 2; beyond them throws SizeLimitError.
OracleResult oracle_makespan(const Instance& inst);

// Exact CVRP from a single depot with unit demands: optimal trip partition
// over destination subsets with Held-Karp tours per trip. At most 10
// destinations; throws SizeLimitError beyond.
Rat oracle_cvrp(const Metric& m, int depot, const std::vector<int>& dests, long long k);

}  // namespace daride
