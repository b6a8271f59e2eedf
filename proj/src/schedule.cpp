#include "daride/schedule.hpp"

#include <algorithm>
#include <stdexcept>

namespace daride {

Rat pos_dist(const Metric& m, const Pos& a, const Pos& b) {
    if (a.is_vertex() && b.is_vertex()) return m.at(a.u, b.u);
    if (a.is_vertex() && !b.is_vertex()) {
        Rat len = m.at(b.u, b.v);
        return std::min(m.at(a.u, b.u) + b.off, m.at(a.u, b.v) + len - b.off);
    }
    if (!a.is_vertex() && b.is_vertex()) return pos_dist(m, b, a);
    // both mid-edge
    Rat la = m.at(a.u, a.v), lb = m.at(b.u, b.v);
    Rat best = std::min(std::min(m.at(a.u, b.u) + a.off + b.off,
                                 m.at(a.u, b.v) + a.off + lb - b.off),
                        std::min(m.at(a.v, b.u) + la - a.off + b.off,
                                 m.at(a.v, b.v) + la - a.off + lb - b.off));
    // same segment: direct travel along it
    if (a.u == b.u && a.v == b.v) {
        Rat diff = a.off > b.off ? a.off - b.off : b.off - a.off;
        best = std::min(best, diff);
    } else if (a.u == b.v && a.v == b.u) {
        Rat boff = la - b.off;  // b expressed from a.u
        Rat diff = a.off > boff ? a.off - boff : boff - a.off;
        best = std::min(best, diff);
    }
    return best;
}

void Schedule::merge_parallel(const Schedule& other) {
    if (q != other.q) throw std::invalid_argument("merge_parallel: vehicle count mismatch");
    while (num_rounds() < other.num_rounds()) add_round();
    for (int r = 0; r < other.num_rounds(); ++r) {
        for (int j = 0; j < q; ++j) {
            if (other.rounds[r][j].empty()) continue;
            if (!rounds[r][j].empty())
                throw std::invalid_argument("merge_parallel: vehicle active on both sides");
            rounds[r][j] = other.rounds[r][j];
        }
    }
}

void Schedule::append_sequential(const Schedule& other) {
    if (q != other.q) throw std::invalid_argument("append_sequential: vehicle count mismatch");
    for (const auto& r : other.rounds) rounds.push_back(r);
}

Rat schedule_makespan(const Metric& metric, const Schedule& sched,
                      const std::vector<int>& depots) {
    if (static_cast<int>(depots.size()) != sched.q)
        throw std::invalid_argument("schedule_makespan: depot count mismatch");
    std::vector<Pos> pos(sched.q);
    for (int j = 0; j < sched.q; ++j) pos[j] = Pos::vertex(depots[j]);
    Rat total(0);
    for (const auto& round : sched.rounds) {
        Rat round_max(0);
        for (int j = 0; j < sched.q; ++j) {
            Rat t(0);
            for (const auto& act : round[j]) {
                if (act.kind == Action::Kind::Move || act.kind == Action::Kind::MoveMid) {
                    Pos to = act.target();
                    t += pos_dist(metric, pos[j], to);
                    pos[j] = to;
                }
            }
            round_max = std::max(round_max, t);
        }
        total += round_max;
    }
    return total;
}

}  // namespace daride
