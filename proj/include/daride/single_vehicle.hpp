#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "daride/config.hpp"
#include "daride/instance.hpp"
#include "daride/schedule.hpp"
#include "daride/tsp.hpp"

namespace daride {

// Single-vehicle tour: starts and ends at the root, picks before drops at
// each stop, direct moves between consecutive stops.
struct SingleTour {
    struct Stop {
        int v = 0;
        std::vector<int> picks;
        std::vector<int> drops;
    };

    int root = 0;
    std::vector<Stop> stops;     // stops.front().v == stops.back().v == root
    Rat length{0};
    std::map<int, Rat> delay;    // object id -> total in-vehicle time

    Rat delay_sum() const;
    // Wraps the tour as a one-vehicle schedule rooted at the tour root.
    Schedule to_schedule() const;
};

// Object to deliver (or collect): id is the caller's demand index.
struct CvrpItem {
    int id = 0;
    int vertex = 0;
    long long weight = 1;
};

// Checkpoint indices along a TSP tour, numbered from the root at position 0.
// Sub-tour p covers tour positions [cps[p-1], cps[p]).
struct CheckpointSet {
    std::vector<int> cps;
};

// Walks the tour and opens a new checkpoint whenever continuing along the
// tour would exceed beta times the direct distance from the root. Both
// output properties are asserted exactly:
//   1. d(0,v_{p-1}) + path(v_{p-1},u) <= beta * d(0,u) for u in [v_{p-1},v_p)
//   2. sum_p d(0,v_p) <= d(C) / (beta - 1)
CheckpointSet select_checkpoints(const Metric& m, const Tour& tour, const Rat& beta);

// Capacitated delivery from a single depot with per-object delay at most
// beta * d(depot, destination), exact. For unit weights the tour length obeys
//   d(tour) <= (1 + 2/(beta-1)) d(C) + (2/k) sum w_i d(depot, t_i)
// with C the computed TSP tour; for general integer weights the asserted
// chain is (3 + 2/(beta-1)) d(C) + (4/k) sum w_i d(depot, t_i).
SingleTour cvrp_bounded_delay(const Metric& m, int depot, std::vector<CvrpItem> items,
                              long long k, const Rat& beta);

// Exact time reversal of cvrp_bounded_delay: collects items at their vertices
// and brings them to the depot, same length and delay bounds with d(s, depot).
SingleTour cvrp_collect(const Metric& m, int depot, std::vector<CvrpItem> items,
                        long long k, const Rat& beta);

// Thrown when the embedding retries run out; carries the best tour seen.
struct TourBoundError : std::runtime_error {
    SingleTour best;
    explicit TourBoundError(SingleTour t)
        : std::runtime_error("preemptive_tour: retries exhausted"), best(std::move(t)) {}
};

// 1-preemptive tour over a random tree embedding: demands grouped by the
// level of their least common ancestor, each group served through the
// cluster representative with two bounded-delay CVRP passes. Resamples the
// embedding until both configured gates hold.
SingleTour preemptive_tour(const Metric& m, const std::vector<Demand>& demands,
                           long long k, std::uint64_t seed, const SolveConfig& cfg);

// Minor-free variant: demands bucketed by distance scale, served cluster by
// cluster over a separated cover; per-object delay is at most c3 * d(s_i,t_i),
// asserted exactly.
SingleTour preemptive_tour_minor_free(const WeightedGraph& g,
                                      const std::vector<Demand>& demands, long long k,
                                      int r, const SolveConfig& cfg);

// Constant-factor capacity-1 routine: TSP order over all endpoints, each
// demand served by a source-to-destination detour when its source is first
// reached. Length <= d(TSP) + 2 sum d(s_i,t_i), asserted.
SingleTour stacker_crane(const Metric& m, const std::vector<Demand>& demands, int depot);

}  // namespace daride
