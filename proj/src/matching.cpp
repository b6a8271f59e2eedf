#include "daride/matching.hpp"

#include <algorithm>
#include <queue>

namespace daride {

bool BipartiteMatcher::augment(int l, std::vector<char>& visited_r,
                               const std::vector<int>& caps) {
    for (int r : adj_[l]) {
        if (visited_r[r]) continue;
        visited_r[r] = 1;
        if (static_cast<int>(right_slots_[r].size()) < caps[r]) {
            right_slots_[r].push_back(l);
            match_of_[l] = r;
            return true;
        }
        for (std::size_t i = 0; i < right_slots_[r].size(); ++i) {
            int other = right_slots_[r][i];
            if (augment(other, visited_r, caps)) {
                right_slots_[r][i] = l;
                match_of_[l] = r;
                return true;
            }
        }
    }
    return false;
}

int BipartiteMatcher::solve(const std::vector<int>& caps) {
    match_of_.assign(nl_, -1);
    right_slots_.assign(nr_, {});
    int matched = 0;
    for (int l = 0; l < nl_; ++l) {
        std::vector<char> visited_r(nr_, 0);
        if (augment(l, visited_r, caps)) ++matched;
    }
    return matched;
}

std::vector<int> BipartiteMatcher::deficiency_set() const {
    std::vector<char> seen_l(nl_, 0), seen_r(nr_, 0);
    std::queue<int> q;
    for (int l = 0; l < nl_; ++l)
        if (match_of_[l] < 0) {
            seen_l[l] = 1;
            q.push(l);
        }
    while (!q.empty()) {
        int l = q.front();
        q.pop();
        for (int r : adj_[l]) {
            if (seen_r[r]) continue;
            seen_r[r] = 1;
            for (int other : right_slots_[r])
                if (!seen_l[other]) {
                    seen_l[other] = 1;
                    q.push(other);
                }
        }
    }
    std::vector<int> out;
    for (int l = 0; l < nl_; ++l)
        if (seen_l[l]) out.push_back(l);
    return out;
}

}  // namespace daride
