#pragma once

#include <string>
#include <vector>

#include "daride/metric.hpp"

namespace daride {

// A point of the metric: either a vertex, or a point at `off` from u on the
// segment (u,v) of length d(u,v). Mid-edge points only ever appear as travel
// targets; picks and drops stay at vertices.
struct Pos {
    int u = 0;
    int v = -1;   // -1 => vertex position at u
    Rat off{0};   // 0 < off < d(u,v) for a proper mid-edge point

    static Pos vertex(int u) { return Pos{u, -1, Rat(0)}; }
    static Pos mid(int u, int v, Rat off) { return Pos{u, v, off}; }
    bool is_vertex() const { return v < 0; }

    bool operator==(const Pos& o) const { return u == o.u && v == o.v && off == o.off; }
};

// d(a, b) where either end may be mid-edge. For a mid-edge point p = (u,v,off),
// d(x, p) = min(d(x,u) + off, d(x,v) + d(u,v) - off); two points on the same
// segment may also connect directly along it.
Rat pos_dist(const Metric& m, const Pos& a, const Pos& b);

struct Action {
    enum class Kind { Move, MoveMid, Pick, Drop, Wait };
    Kind kind = Kind::Wait;
    int a = 0;    // Move: target vertex; MoveMid: u
    int b = 0;    // MoveMid: v
    Rat off{0};   // MoveMid offset from a
    int obj = 0;  // Pick/Drop object id

    static Action move(int to) { return {Kind::Move, to, 0, Rat(0), 0}; }
    static Action move_mid(int u, int v, Rat off) { return {Kind::MoveMid, u, v, off, 0}; }
    static Action move_pos(const Pos& p) {
        return p.is_vertex() ? move(p.u) : move_mid(p.u, p.v, p.off);
    }
    static Action pick(int obj) { return {Kind::Pick, 0, 0, Rat(0), obj}; }
    static Action drop(int obj) { return {Kind::Drop, 0, 0, Rat(0), obj}; }
    static Action wait() { return {Kind::Wait, 0, 0, Rat(0), 0}; }

    Pos target() const { return kind == Kind::Move ? Pos::vertex(a) : Pos::mid(a, b, off); }
};

// Vehicles are synchronized at round boundaries: every vehicle finishes round
// i before round i+1 begins. Within a round each vehicle runs its action list;
// moves cost metric distance, picks/drops/waits cost zero.
struct Schedule {
    int q = 0;
    std::vector<std::vector<std::vector<Action>>> rounds;  // rounds[r][vehicle]

    static Schedule empty(int q) { return Schedule{q, {}}; }
    int num_rounds() const { return static_cast<int>(rounds.size()); }

    std::vector<std::vector<Action>>& add_round() {
        rounds.emplace_back(q);
        return rounds.back();
    }

    // Runs `other` alongside this schedule (round i with round i), shorter
    // side padded with idle rounds. Vehicle activity must be disjoint.
    void merge_parallel(const Schedule& other);
    // Appends other's rounds after this schedule's rounds.
    void append_sequential(const Schedule& other);
};

// Sum over rounds of the maximum per-vehicle round duration.
Rat schedule_makespan(const Metric& metric, const Schedule& sched,
                      const std::vector<int>& depots);

}  // namespace daride
