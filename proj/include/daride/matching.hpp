#pragma once

#include <vector>

namespace daride {

// Bipartite matching where each right vertex can take up to cap[r] left
// vertices. Used for piece-to-depot assignment and for deficiency-set
// extraction during load rebalancing.
class BipartiteMatcher {
  public:
    BipartiteMatcher(int nl, int nr) : nl_(nl), nr_(nr), adj_(nl) {}

    void add_edge(int l, int r) { adj_[l].push_back(r); }

    // Maximum matching under right capacities; returns matched count.
    // match_of[l] = right index or -1.
    int solve(const std::vector<int>& caps);

    const std::vector<int>& match_of() const { return match_of_; }

    // Left vertices reachable from unmatched lefts via alternating paths
    // (left->right on any edge, right->left on matched edges). Nonempty iff
    // the matching left some vertex unmatched; for such a set T the
    // neighborhood satisfies sum(caps over N(T)) < |T|.
    std::vector<int> deficiency_set() const;

  private:
    bool augment(int l, std::vector<char>& visited_r, const std::vector<int>& caps);

    int nl_, nr_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> match_of_;                  // left -> right or -1
    std::vector<std::vector<int>> right_slots_;  // right -> matched lefts
};

}  // namespace daride
