#pragma once

#include <tuple>
#include <vector>

#include "daride/instance.hpp"

namespace daride {

struct LowerBoundSet {
    Rat flow{0};
    Rat nsl{0};       // rooted-forest heuristic cost divided by kCnsl
    Rat max_pair{0};  // max_i d(s_i, t_i)
    Rat max_src{0};   // max_i d(R, s_i)
    Rat max_dst{0};   // max_i d(R, t_i)
    Rat combined{0};  // max of all fields
};

// The heuristic rooted-forest cost is divided by this factor before entering
// the combined bound, so the bound stays valid as long as the heuristic is
// within factor 16 of optimal (checked against nsl_oracle in the test suite).
inline constexpr long long kCnsl = 16;

struct RootedForest {
    // trees[j]: edge list (u,v pairs of metric vertices) of the tree rooted at
    // depots[j]; an empty list is the trivial tree {r_j}.
    std::vector<std::vector<std::pair<int, int>>> trees;
    Rat cost{0};  // max_j d(F_j)

    Rat tree_length(const Metric& m, int j) const;
    bool covers(const std::vector<int>& depots, const std::vector<int>& terminals) const;
};

// sum_i w_i * d(s_i, t_i) / (q * k)
Rat flow_lb(const Instance& inst);

// (max_pair, max_src, max_dst)
std::tuple<Rat, Rat, Rat> trivial_lbs(const Instance& inst);

// Rooted min-max tree cover heuristic: for increasing guesses of the optimum,
// decompose an MST over depots+terminals into short pieces and assign at most
// four pieces to each depot through a capacitated matching.
RootedForest nsl_solve(const Metric& metric, const std::vector<int>& depots,
                       const std::vector<int>& terminals);

// Exact optimum via terminal-partition enumeration with Dreyfus-Wagner Steiner
// trees. Limits: |terminals| <= 8, |depots| <= 3; throws SizeLimitError beyond.
RootedForest nsl_oracle(const Metric& metric, const std::vector<int>& depots,
                        const std::vector<int>& terminals);

LowerBoundSet lb_max(const Instance& inst);

}  // namespace daride
