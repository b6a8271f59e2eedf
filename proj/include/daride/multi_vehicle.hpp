#pragma once

#include <optional>
#include <set>
#include <vector>

#include "daride/config.hpp"
#include "daride/instance.hpp"
#include "daride/lower_bounds.hpp"
#include "daride/schedule.hpp"
#include "daride/single_vehicle.hpp"

namespace daride {

// Contiguous segment of a cut single-vehicle tour. Picks and drops stay on
// vertex stops; only the segment ends may sit mid-edge.
struct Piece {
    struct Ev {
        int path_idx;  // stop in `path` where the event fires
        int obj;
        bool pick;
        int leg;  // 0 = source to preemption, 1 = preemption to destination
    };
    std::vector<Pos> path;  // start, interior stops, end
    std::vector<Ev> events;
    Rat length{0};
    bool nontrivial = false;
};

struct TourCut {
    std::vector<Piece> pieces;        // nontrivial pieces only
    std::set<int> cut_objects;        // C'': objects carried over a cut
    int raw_piece_count = 0;          // before dropping trivial pieces
};

// Objects cut by the offsets {p * rho_b + eta, p >= 1} along the tour.
int count_cut_objects(const Metric& m, const SingleTour& tour, const Rat& rho_b,
                      const Rat& eta);

// Offset minimizing the number of cut objects over the candidate set (leg
// boundaries modulo rho_b plus arc midpoints), ties by smallest offset. On a
// fine sweep no candidate is beaten, which the tests verify.
Rat choose_cut_offset(const Metric& m, const SingleTour& tour, const Rat& rho_b,
                      int* cuts_out = nullptr);

TourCut cut_tour(const Metric& m, const SingleTour& tour, const Rat& rho_b,
                 const Rat& eta);

// Load rebalancing on the pieces-to-depots bipartite graph.
struct RebalanceResult {
    std::vector<int> S;         // contracting piece set, inclusion-maximal
    std::vector<int> gamma_s;   // depot neighborhood of S
    std::vector<int> pi;        // piece -> depot (2-matching), -1 inside S
};

// S maximal with |Gamma(S)| <= |S|/2; the complement carries a 2-matching.
RebalanceResult max_contracting_set(int n_pieces, int n_depots,
                                    const std::vector<std::vector<int>>& adj);

struct PartialCallRecord {
    int d_size = 0;
    int covered = 0;
    int depth = 0;
    int cut_count = 0;
    int vehicles = 0;
};

struct SolveTrace {
    std::vector<Rat> guessed_bs;
    std::vector<PartialCallRecord> calls;
    Rat final_makespan{0};
    LowerBoundSet lbs;
    Rat preproc_ratio{0};  // max over PreProc calls of makespan / B
};

struct PartialResult {
    Schedule schedule;       // at most two rounds, vehicles outside Q idle
    std::vector<int> covered;  // demand ids served
};

// One run of the partial coverage routine at bound B. Returns nullopt when a
// promise violation is detected (orphan demands, tour too long, too many
// pieces, empty rebalancing neighborhood with pending demands); the driver
// reacts by doubling B. rho = c_rho * ceil(log2(n+2)) * ceil(log2(m+2)).
std::optional<PartialResult> partial(const Instance& inst, const std::vector<int>& vehicles,
                                     const std::vector<int>& demand_ids, const Rat& bound,
                                     const Rat& rho, int depth, const SolveConfig& cfg,
                                     SolveTrace* trace);

// Iterates partial over uncovered demands with a geometric bound ladder
// starting at the combined lower bound (or the caller's hint).
std::pair<Schedule, SolveTrace> cap_solve(const Instance& inst, const SolveConfig& cfg,
                                          std::optional<Rat> bound_hint = std::nullopt);

// Depot-demand instance (every endpoint a depot vertex, no capacity limit):
// spanner rounds, one vehicle active per distinct depot. Exactly 2 * alpha
// rounds with alpha = ceil(lg t) + 1 whenever an object has to move.
Schedule depot_demand_schedule(const Instance& inst);

// Sparse-cover core for depot-demand instances on minor-free graphs: two
// rounds over cluster centers, centers forced onto depot vertices.
Schedule uncap_solve_minor_free(const WeightedGraph& g, const Instance& inst, int r);

enum class UncapCore { Spanner, MinorFree };

// Rooted-forest reduction to a depot-demand core: collect to source depots,
// move across depots, deliver from destination depots.
std::pair<Schedule, SolveTrace> uncap_solve(const Instance& inst, const SolveConfig& cfg,
                                            UncapCore core = UncapCore::Spanner);

// Heavy-pair preprocessing: per-pair weight partition, one stacker-crane
// tour on the unit instance, zero-load cuts, then the same rebalancing and
// recursion as partial. Returns nullopt on promise violations.
struct HeavyPair {
    int u = 0;
    int v = 0;
    std::vector<int> objects;  // demand ids with source u, destination v
};
std::optional<Schedule> preproc_heavy(const Instance& inst, const std::vector<int>& vehicles,
                                      const std::vector<HeavyPair>& pairs, const Rat& bound,
                                      int depth, const SolveConfig& cfg, SolveTrace* trace);

// Two-phase weighted pipeline: heavy pairs through preproc_heavy, light pairs
// aggregated into single objects and served by the partial machinery.
std::pair<Schedule, SolveTrace> weighted_solve(const Instance& inst, const SolveConfig& cfg,
                                               std::optional<Rat> bound_hint = std::nullopt);

}  // namespace daride
