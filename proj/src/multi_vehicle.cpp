#include "daride/multi_vehicle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <queue>
#include <stdexcept>

#include "daride/matching.hpp"
#include "daride/spanner.hpp"
#include "daride/cover.hpp"

namespace daride {

namespace {

Rat rat_mod(const Rat& a, const Rat& m) { return a - m * Rat(rat_floor(a / m)); }

struct Leg {
    int obj = 0;
    int leg_idx = 0;
    Rat a{0}, b{0};
    int pick_stop = 0, drop_stop = 0;
};

// cumulative stop positions plus pick/drop legs per object, in tour order
std::vector<Leg> tour_legs(const Metric& m, const SingleTour& tour,
                           std::vector<Rat>& cum) {
    cum.assign(tour.stops.size(), Rat(0));
    for (std::size_t i = 1; i < tour.stops.size(); ++i)
        cum[i] = cum[i - 1] + m.at(tour.stops[i - 1].v, tour.stops[i].v);
    std::map<int, std::vector<std::pair<Rat, int>>> picks, drops;
    std::vector<Leg> legs;
    std::map<int, int> open;  // obj -> stop of pending pick
    std::map<int, int> count;
    for (int i = 0; i < static_cast<int>(tour.stops.size()); ++i) {
        for (int o : tour.stops[i].picks) {
            if (open.count(o)) throw std::logic_error("tour_legs: nested pick");
            open[o] = i;
        }
        for (int o : tour.stops[i].drops) {
            auto it = open.find(o);
            if (it == open.end()) throw std::logic_error("tour_legs: drop without pick");
            legs.push_back({o, count[o]++, cum[it->second], cum[i], it->second, i});
            open.erase(it);
        }
    }
    if (!open.empty()) throw std::logic_error("tour_legs: unclosed pick");
    return legs;
}

bool leg_is_cut(const Rat& a, const Rat& b, const Rat& rho_b, const Rat& eta) {
    if (rho_b <= Rat(0) || b <= a) return false;
    long long p = rat_floor((a - eta) / rho_b) + 1;
    if (p < 1) p = 1;
    return Rat(p) * rho_b + eta < b;
}

}  // namespace

namespace {

int count_cuts(const std::vector<Leg>& legs, const Rat& rho_b, const Rat& eta) {
    std::set<int> cut;
    for (const auto& lg : legs)
        if (leg_is_cut(lg.a, lg.b, rho_b, eta)) cut.insert(lg.obj);
    return static_cast<int>(cut.size());
}

Rat choose_offset_impl(const std::vector<Leg>& legs, const Rat& rho_b, int* cuts_out) {
    std::set<Rat> cand{Rat(0), rho_b};
    for (const auto& lg : legs) {
        if (lg.b <= lg.a) continue;
        cand.insert(rat_mod(lg.a, rho_b));
        cand.insert(rat_mod(lg.b, rho_b));
    }
    std::vector<Rat> pts(cand.begin(), cand.end());
    std::vector<Rat> etas = pts;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        etas.push_back((pts[i] + pts[i + 1]) / Rat(2));
    std::sort(etas.begin(), etas.end());
    Rat best_eta(0);
    int best = -1;
    for (const Rat& eta : etas) {
        int c = count_cuts(legs, rho_b, eta);
        if (best < 0 || c < best) {
            best = c;
            best_eta = eta;
        }
    }
    if (cuts_out) *cuts_out = best;
    return best_eta;
}

}  // namespace

// metric-aware entry points
static std::vector<Leg> legs_of(const Metric& m, const SingleTour& tour) {
    std::vector<Rat> cum;
    return tour_legs(m, tour, cum);
}

int count_cut_objects(const Metric& m, const SingleTour& tour, const Rat& rho_b,
                      const Rat& eta) {
    return count_cuts(legs_of(m, tour), rho_b, eta);
}

Rat choose_cut_offset(const Metric& m, const SingleTour& tour, const Rat& rho_b,
                      int* cuts_out) {
    return choose_offset_impl(legs_of(m, tour), rho_b, cuts_out);
}

TourCut cut_tour(const Metric& m, const SingleTour& tour, const Rat& rho_b,
                 const Rat& eta) {
    std::vector<Rat> cum;
    auto legs = tour_legs(m, tour, cum);
    Rat L = tour.length;

    std::vector<Rat> cuts;
    if (rho_b > Rat(0))
        for (long long p = 1; Rat(p) * rho_b + eta < L; ++p)
            cuts.push_back(Rat(p) * rho_b + eta);

    TourCut out;
    for (const auto& lg : legs)
        if (leg_is_cut(lg.a, lg.b, rho_b, eta)) out.cut_objects.insert(lg.obj);

    std::vector<Rat> bounds{Rat(0)};
    for (const Rat& x : cuts) bounds.push_back(x);
    bounds.push_back(L);
    out.raw_piece_count = static_cast<int>(bounds.size()) - 1;

    // leg -> piece index: number of cuts at or before the pick position
    auto piece_of = [&](const Rat& a) {
        int idx = 0;
        for (const Rat& x : cuts)
            if (x <= a) ++idx;
        return idx;
    };

    std::vector<Piece> pieces(out.raw_piece_count);
    int n_stops = static_cast<int>(tour.stops.size());
    for (int pi = 0; pi < out.raw_piece_count; ++pi) {
        Rat lo = bounds[pi], hi = bounds[pi + 1];
        Piece& pc = pieces[pi];
        pc.length = hi - lo;
        int s_begin = 0;
        while (s_begin < n_stops && cum[s_begin] < lo) ++s_begin;
        int s_end = n_stops - 1;
        while (s_end >= 0 && cum[s_end] > hi) --s_end;
        std::map<int, int> stop_to_path;
        if (s_begin > s_end) {
            // piece inside one long move
            int i = s_begin - 1;
            pc.path.push_back(Pos::mid(tour.stops[i].v, tour.stops[i + 1].v, lo - cum[i]));
            pc.path.push_back(Pos::mid(tour.stops[i].v, tour.stops[i + 1].v, hi - cum[i]));
            continue;
        }
        if (cum[s_begin] > lo) {
            int i = s_begin - 1;
            pc.path.push_back(Pos::mid(tour.stops[i].v, tour.stops[i + 1].v, lo - cum[i]));
        }
        for (int i = s_begin; i <= s_end; ++i) {
            stop_to_path[i] = static_cast<int>(pc.path.size());
            pc.path.push_back(Pos::vertex(tour.stops[i].v));
        }
        if (cum[s_end] < hi) {
            int i = s_end;
            pc.path.push_back(Pos::mid(tour.stops[i].v, tour.stops[i + 1].v, hi - cum[i]));
        }
        // attach uncut positive legs that live in this piece
        for (const auto& lg : legs) {
            if (lg.b <= lg.a) continue;
            if (out.cut_objects.count(lg.obj)) continue;
            if (piece_of(lg.a) != pi) continue;
            pc.events.push_back({stop_to_path.at(lg.pick_stop), lg.obj, true, lg.leg_idx});
            pc.events.push_back({stop_to_path.at(lg.drop_stop), lg.obj, false, lg.leg_idx});
            pc.nontrivial = true;
        }
        std::sort(pc.events.begin(), pc.events.end(),
                  [](const Piece::Ev& x, const Piece::Ev& y) {
                      if (x.path_idx != y.path_idx) return x.path_idx < y.path_idx;
                      if (x.pick != y.pick) return x.pick;  // picks before drops
                      return x.obj < y.obj;
                  });
    }
    for (auto& pc : pieces)
        if (pc.nontrivial) out.pieces.push_back(std::move(pc));
    return out;
}

RebalanceResult max_contracting_set(int n_pieces, int n_depots,
                                    const std::vector<std::vector<int>>& adj) {
    std::vector<char> in_s(n_pieces, 0);
    auto gamma = [&](const std::vector<char>& flags) {
        std::set<int> g;
        for (int p = 0; p < n_pieces; ++p)
            if (flags[p])
                for (int d : adj[p]) g.insert(d);
        return g;
    };

    RebalanceResult res;
    while (true) {
        std::set<int> gs = gamma(in_s);
        std::vector<int> rp, rd;
        for (int p = 0; p < n_pieces; ++p)
            if (!in_s[p]) rp.push_back(p);
        for (int d = 0; d < n_depots; ++d)
            if (!gs.count(d)) rd.push_back(d);
        std::map<int, int> didx;
        for (int i = 0; i < static_cast<int>(rd.size()); ++i) didx[rd[i]] = i;
        int s_size = 0;
        for (int p = 0; p < n_pieces; ++p) s_size += in_s[p];
        int slack = s_size - 2 * static_cast<int>(gs.size());  // >= 0 by invariant

        // residual matching; `dup` piece replicated `copies` extra times to
        // probe for supersets T with 2|Gamma(T)| <= |T| that S's slack admits
        auto run = [&](int dup, int copies) {
            int nl = static_cast<int>(rp.size()) + (dup >= 0 ? copies : 0);
            BipartiteMatcher bm(nl, static_cast<int>(rd.size()));
            for (int i = 0; i < static_cast<int>(rp.size()); ++i)
                for (int d : adj[rp[i]])
                    if (didx.count(d)) bm.add_edge(i, didx[d]);
            for (int c = 0; c < (dup >= 0 ? copies : 0); ++c)
                for (int d : adj[dup])
                    if (didx.count(d))
                        bm.add_edge(static_cast<int>(rp.size()) + c, didx[d]);
            std::vector<int> caps(rd.size(), 2);
            int matched = bm.solve(caps);
            return std::make_pair(matched == nl, bm);
        };

        auto [sat, bm] = run(-1, 0);
        if (!sat) {
            for (int l : bm.deficiency_set()) in_s[rp[l]] = 1;
            continue;
        }
        bool grew = false;
        for (int i = 0; i < static_cast<int>(rp.size()) && !grew; ++i) {
            auto [sat2, bm2] = run(rp[i], slack + 1);
            if (sat2) continue;
            for (int l : bm2.deficiency_set())
                in_s[l < static_cast<int>(rp.size()) ? rp[l] : rp[i]] = 1;
            grew = true;
        }
        if (grew) continue;

        res.pi.assign(n_pieces, -1);
        for (int i = 0; i < static_cast<int>(rp.size()); ++i)
            res.pi[rp[i]] = bm.match_of()[i] >= 0 ? rd[bm.match_of()[i]] : -1;
        break;
    }
    for (int p = 0; p < n_pieces; ++p)
        if (in_s[p]) res.S.push_back(p);
    std::set<int> gs = gamma(in_s);
    res.gamma_s.assign(gs.begin(), gs.end());
    return res;
}

namespace {

Rat pos_min_dist(const Metric& m, int vertex, const Piece& pc) {
    Rat best = pos_dist(m, Pos::vertex(vertex), pc.path[0]);
    for (const auto& p : pc.path) best = std::min(best, pos_dist(m, Pos::vertex(vertex), p));
    return best;
}

// MST split on depot points; returns vehicle partition when an edge exceeds
// the threshold
std::optional<std::pair<std::vector<int>, std::vector<int>>> mst_split(
    const Metric& m, const std::vector<int>& vehicles, const std::vector<int>& depots,
    const Rat& threshold) {
    if (vehicles.size() < 2) return std::nullopt;
    std::vector<int> pts;
    for (int vh : vehicles) pts.push_back(depots[vh]);
    auto [edges, total] = mst_edges(m, pts);
    int long_edge = -1;
    for (int i = 0; i < static_cast<int>(edges.size()); ++i)
        if (m.at(pts[edges[i].first], pts[edges[i].second]) > threshold) long_edge = i;
    if (long_edge < 0) return std::nullopt;
    // components of the MST without that edge
    std::vector<std::vector<int>> adj(pts.size());
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
        if (i == long_edge) continue;
        adj[edges[i].first].push_back(edges[i].second);
        adj[edges[i].second].push_back(edges[i].first);
    }
    std::vector<char> side(pts.size(), 0);
    std::queue<int> q;
    q.push(edges[long_edge].first);
    std::vector<char> seen(pts.size(), 0);
    seen[edges[long_edge].first] = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        side[u] = 1;
        for (int v : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                q.push(v);
            }
    }
    std::pair<std::vector<int>, std::vector<int>> parts;
    for (std::size_t i = 0; i < vehicles.size(); ++i)
        (side[i] ? parts.first : parts.second).push_back(vehicles[i]);
    return parts;
}

Rat min_cross_dist(const Metric& m, const std::vector<int>& a, const std::vector<int>& b) {
    Rat best = m.at(a[0], b[0]);
    for (int u : a)
        for (int v : b) best = std::min(best, m.at(u, v));
    return best;
}

std::uint64_t call_seed(const SolveConfig& cfg, std::size_t nq, std::size_t nd, int depth) {
    return cfg.seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(depth) + 1) +
           131 * nd + 31 * nq;
}

}  // namespace

std::optional<PartialResult> partial(const Instance& inst, const std::vector<int>& vehicles,
                                     const std::vector<int>& demand_ids, const Rat& bound,
                                     const Rat& rho, int depth, const SolveConfig& cfg,
                                     SolveTrace* trace) {
    const Metric& m = inst.metric;
    PartialResult out;
    out.schedule = Schedule::empty(inst.q());

    // objects already sitting at their destination need no work
    std::vector<int> live;
    for (int i : demand_ids) {
        if (inst.demands[i].s == inst.demands[i].t)
            out.covered.push_back(i);
        else
            live.push_back(i);
    }
    auto record = [&](int covered_cnt, int cuts) {
        if (trace)
            trace->calls.push_back({static_cast<int>(demand_ids.size()), covered_cnt, depth,
                                    cuts, static_cast<int>(vehicles.size())});
    };
    if (live.empty()) {
        record(static_cast<int>(out.covered.size()), 0);
        return out;
    }
    if (vehicles.empty()) return std::nullopt;

    // preprocessing: decouple far-apart depot groups
    if (auto split = mst_split(m, vehicles, inst.depots, Rat(3) * bound)) {
        auto [q1, q2] = *split;
        std::vector<int> d1verts, d2verts;
        for (int vh : q1) d1verts.push_back(inst.depots[vh]);
        for (int vh : q2) d2verts.push_back(inst.depots[vh]);
        if (min_cross_dist(m, d1verts, d2verts) <= Rat(3) * bound)
            throw std::logic_error("partial: split fired without separation");
        auto within = [&](const std::vector<int>& dverts, int v) {
            for (int dv : dverts)
                if (m.at(dv, v) <= bound) return true;
            return false;
        };
        // the B-balls around the two depot groups are strictly separated
        std::vector<int> ball1, ball2;
        for (int v = 0; v < m.n; ++v) {
            if (within(d1verts, v)) ball1.push_back(v);
            if (within(d2verts, v)) ball2.push_back(v);
        }
        if (!ball1.empty() && !ball2.empty() &&
            min_cross_dist(m, ball1, ball2) <= bound)
            throw std::logic_error("partial: ball families not separated");
        std::vector<int> D1, D2;
        for (int i : live) {
            const auto& dm = inst.demands[i];
            bool in1 = within(d1verts, dm.s) && within(d1verts, dm.t);
            bool in2 = within(d2verts, dm.s) && within(d2verts, dm.t);
            if (in1)
                D1.push_back(i);
            else if (in2)
                D2.push_back(i);
            else
                return std::nullopt;  // orphan demand: the promise was broken
        }
        auto r1 = partial(inst, q1, D1, bound, rho, depth, cfg, trace);
        if (!r1) return std::nullopt;
        auto r2 = partial(inst, q2, D2, bound, rho, depth, cfg, trace);
        if (!r2) return std::nullopt;
        out.schedule = std::move(r1->schedule);
        out.schedule.merge_parallel(r2->schedule);
        for (int i : r1->covered) out.covered.push_back(i);
        for (int i : r2->covered) out.covered.push_back(i);
        record(static_cast<int>(out.covered.size()), 0);
        return out;
    }

    // single-vehicle tour over the live demands
    std::vector<Demand> sub;
    for (int i : live) sub.push_back(inst.demands[i]);
    SingleTour tour;
    try {
        tour = preemptive_tour(m, sub, inst.capacity,
                               call_seed(cfg, vehicles.size(), live.size(), depth), cfg);
    } catch (const TourBoundError& e) {
        tour = e.best;  // the length check below decides whether it is usable
    }

    if (vehicles.size() == 1) {
        int vh = vehicles[0];
        int dv = inst.depots[vh];
        for (int i : live) {
            const auto& dm = inst.demands[i];
            if (m.at(dv, dm.s) > bound || m.at(dv, dm.t) > bound) return std::nullopt;
        }
        if (tour.length > rho * bound) return std::nullopt;
        auto& round = out.schedule.add_round();
        for (std::size_t si = 0; si < tour.stops.size(); ++si) {
            if (si > 0 || tour.stops[si].v != dv)
                round[vh].push_back(Action::move(tour.stops[si].v));
            for (int o : tour.stops[si].picks) round[vh].push_back(Action::pick(live[o]));
            for (int o : tour.stops[si].drops) round[vh].push_back(Action::drop(live[o]));
        }
        if (tour.stops.empty() || tour.stops.back().v != dv)
            round[vh].push_back(Action::move(dv));
        for (int i : live) out.covered.push_back(i);
        record(static_cast<int>(out.covered.size()), 0);
        return out;
    }

    if (tour.length > rho * Rat(static_cast<long long>(vehicles.size())) * bound)
        return std::nullopt;

    Rat rho_b = rho * bound;
    int cut_count = 0;
    Rat eta = choose_cut_offset(m, tour, rho_b, &cut_count);
    TourCut cut = cut_tour(m, tour, rho_b, eta);
    if (static_cast<int>(cut.pieces.size()) > static_cast<int>(vehicles.size()))
        return std::nullopt;

    // bipartite graph pieces x vehicles, edge iff d(depot, piece) <= 2B
    int np = static_cast<int>(cut.pieces.size());
    std::vector<std::vector<int>> adj(np);
    for (int p = 0; p < np; ++p)
        for (int j = 0; j < static_cast<int>(vehicles.size()); ++j)
            if (pos_min_dist(m, inst.depots[vehicles[j]], cut.pieces[p]) <= Rat(2) * bound)
                adj[p].push_back(j);
    RebalanceResult reb = max_contracting_set(np, static_cast<int>(vehicles.size()), adj);
    std::set<int> s_set(reb.S.begin(), reb.S.end());

    // C1: objects with a leg inside S; C2: all legs in matched pieces
    std::set<int> c1, c2;
    for (int p = 0; p < np; ++p)
        for (const auto& ev : cut.pieces[p].events)
            if (s_set.count(p)) c1.insert(ev.obj);
    for (int local = 0; local < static_cast<int>(live.size()); ++local) {
        if (cut.cut_objects.count(local) || c1.count(local)) continue;
        c2.insert(local);
    }

    std::vector<int> gamma_vehicles;
    for (int j : reb.gamma_s) gamma_vehicles.push_back(vehicles[j]);
    std::optional<PartialResult> rec;
    if (!c1.empty()) {
        if (gamma_vehicles.empty()) return std::nullopt;
        if (depth + 1 > ceil_log2(inst.q()) + 2) return std::nullopt;
        std::vector<int> c1_global;
        for (int local : c1) c1_global.push_back(live[local]);
        rec = partial(inst, gamma_vehicles, c1_global, bound, rho, depth + 1, cfg, trace);
        if (!rec) return std::nullopt;
    }

    // two rounds for C2: sources to preemption points, then onwards
    Schedule c2sched = Schedule::empty(inst.q());
    for (int leg = 0; leg < 2; ++leg) {
        auto& round = c2sched.add_round();
        for (int j = 0; j < static_cast<int>(vehicles.size()); ++j) {
            int vh = vehicles[j];
            std::vector<int> mine;
            for (int p = 0; p < np; ++p)
                if (reb.pi[p] == j) mine.push_back(p);
            if (mine.empty()) continue;
            bool acted = false;
            for (int p : mine) {
                const Piece& pc = cut.pieces[p];
                // only traverse when this leg round has work in the piece
                bool has = false;
                for (const auto& ev : pc.events)
                    if (ev.leg == leg && c2.count(ev.obj)) has = true;
                if (!has) continue;
                acted = true;
                for (std::size_t pi_idx = 0; pi_idx < pc.path.size(); ++pi_idx) {
                    round[vh].push_back(Action::move_pos(pc.path[pi_idx]));
                    for (const auto& ev : pc.events) {
                        if (ev.path_idx != static_cast<int>(pi_idx)) continue;
                        if (ev.leg != leg || !c2.count(ev.obj)) continue;
                        round[vh].push_back(ev.pick ? Action::pick(live[ev.obj])
                                                    : Action::drop(live[ev.obj]));
                    }
                }
            }
            if (acted) round[vh].push_back(Action::move(inst.depots[vh]));
        }
    }
    out.schedule = std::move(c2sched);
    if (rec) out.schedule.merge_parallel(rec->schedule);
    for (int local : c2) out.covered.push_back(live[local]);
    if (rec)
        for (int i : rec->covered) out.covered.push_back(i);

    Rat ms = schedule_makespan(m, out.schedule, inst.depots);
    if (ms > (Rat(16) + Rat(16) * rho) * bound)
        throw std::logic_error("partial: makespan bound violated");
    record(static_cast<int>(out.covered.size()), static_cast<int>(cut.cut_objects.size()));
    return out;
}

std::pair<Schedule, SolveTrace> cap_solve(const Instance& inst, const SolveConfig& cfg,
                                          std::optional<Rat> bound_hint) {
    inst.check();
    SolveTrace trace;
    trace.lbs = lb_max(inst);

    std::vector<int> live;
    for (int i = 0; i < inst.m(); ++i)
        if (inst.demands[i].s != inst.demands[i].t) live.push_back(i);
    Schedule sched = Schedule::empty(inst.q());
    if (live.empty()) return {sched, trace};

    Rat rho = Rat(cfg.c_rho) * Rat(ceil_log2(inst.n() + 2)) * Rat(ceil_log2(inst.m() + 2));
    int max_iter = 1;
    {
        double need = std::log(static_cast<double>(live.size())) / std::log(4.0 / 3.0);
        max_iter = static_cast<int>(need) + 2;
    }
    Rat b = bound_hint.value_or(trace.lbs.combined > Rat(0) ? trace.lbs.combined : Rat(1));
    if (b <= Rat(0)) b = Rat(1);
    std::vector<int> all_vehicles(inst.q());
    for (int j = 0; j < inst.q(); ++j) all_vehicles[j] = j;

    for (int doubling = 0; doubling < 64; ++doubling) {
        trace.guessed_bs.push_back(b);
        Schedule attempt = Schedule::empty(inst.q());
        std::set<int> uncovered(live.begin(), live.end());
        bool ok = true;
        for (int it = 0; it < max_iter && !uncovered.empty(); ++it) {
            std::vector<int> want(uncovered.begin(), uncovered.end());
            auto res = partial(inst, all_vehicles, want, b, rho, 0, cfg, &trace);
            if (!res) {
                ok = false;
                break;
            }
            attempt.append_sequential(res->schedule);
            for (int i : res->covered) uncovered.erase(i);
        }
        if (ok && uncovered.empty()) {
            trace.final_makespan = schedule_makespan(inst.metric, attempt, inst.depots);
            return {attempt, trace};
        }
        b *= Rat(2);
    }
    throw std::logic_error("cap_solve: bound search did not converge");
}

Schedule depot_demand_schedule(const Instance& inst) {
    inst.check();
    if (!inst.uncapacitated())
        throw std::invalid_argument("depot_demand_schedule: capacity must be slack");
    std::set<int> dset(inst.depots.begin(), inst.depots.end());
    for (const auto& dm : inst.demands)
        if (!dset.count(dm.s) || !dset.count(dm.t))
            throw std::invalid_argument("depot_demand_schedule: endpoints must be depots");

    std::vector<int> live;
    for (int i = 0; i < inst.m(); ++i)
        if (inst.demands[i].s != inst.demands[i].t) live.push_back(i);
    if (live.empty()) return Schedule::empty(inst.q());

    std::vector<int> rd(dset.begin(), dset.end());
    std::map<int, int> rd_idx;
    for (int i = 0; i < static_cast<int>(rd.size()); ++i) rd_idx[rd[i]] = i;
    std::vector<int> rep(rd.size(), -1);
    for (int j = inst.q() - 1; j >= 0; --j) rep[rd_idx[inst.depots[j]]] = j;

    int t = static_cast<int>(rd.size());
    int alpha = ceil_log2(t) + 1;

    std::vector<std::pair<int, int>> demand_edges;
    for (int i : live)
        demand_edges.push_back({rd_idx[inst.demands[i].s], rd_idx[inst.demands[i].t]});
    Spanner sp = sparse_spanner(t, demand_edges, alpha);
    sp.check(demand_edges);

    // hop path for every object inside the spanner (BFS, lowest-index parents)
    std::vector<std::vector<std::pair<int, int>>> adj(t);
    for (int e = 0; e < static_cast<int>(sp.edges.size()); ++e) {
        adj[sp.edges[e].first].push_back({sp.edges[e].second, e});
        adj[sp.edges[e].second].push_back({sp.edges[e].first, e});
    }
    for (auto& lst : adj) std::sort(lst.begin(), lst.end());
    auto hop_path = [&](int s, int g) {
        std::vector<int> par(t, -2);
        par[s] = -1;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (auto [v, e] : adj[u])
                if (par[v] == -2) {
                    par[v] = u;
                    q.push(v);
                }
        }
        std::vector<int> path;
        for (int v = g; v != -1; v = par[v]) path.push_back(v);
        std::reverse(path.begin(), path.end());
        return path;
    };
    std::vector<std::vector<int>> paths;
    for (int i : live) {
        auto p = hop_path(rd_idx[inst.demands[i].s], rd_idx[inst.demands[i].t]);
        if (static_cast<int>(p.size()) - 1 > 2 * alpha)
            throw std::logic_error("depot_demand_schedule: path too long");
        paths.push_back(std::move(p));
    }

    // edge owner vehicle
    std::vector<int> owner(sp.edges.size(), -1);
    for (int v = 0; v < t; ++v)
        for (int e : sp.assigned[v]) owner[e] = v;
    std::map<std::pair<int, int>, int> edge_id;
    for (int e = 0; e < static_cast<int>(sp.edges.size()); ++e) edge_id[sp.edges[e]] = e;

    Schedule sched = Schedule::empty(inst.q());
    for (int round_no = 0; round_no < 2 * alpha; ++round_no) {
        auto& round = sched.add_round();
        // objects advance exactly one hop per round
        std::map<int, std::vector<std::pair<int, int>>> hop_fwd, hop_bwd;  // edge -> (obj, dir)
        for (std::size_t li = 0; li < paths.size(); ++li) {
            const auto& p = paths[li];
            if (round_no + 1 >= static_cast<int>(p.size())) continue;
            int a = p[round_no], bvert = p[round_no + 1];
            int e = edge_id.at({std::min(a, bvert), std::max(a, bvert)});
            if (a == sp.edges[e].first)
                hop_fwd[e].push_back({live[li], 0});
            else
                hop_bwd[e].push_back({live[li], 0});
        }
        for (int v = 0; v < t; ++v) {
            if (sp.assigned[v].empty()) continue;
            int vh = rep[v];
            for (int e : sp.assigned[v]) {
                int a = sp.edges[e].first, bvert = sp.edges[e].second;
                int other = (a == v) ? bvert : a;
                auto& out_hops = (a == v) ? hop_fwd[e] : hop_bwd[e];
                auto& back_hops = (a == v) ? hop_bwd[e] : hop_fwd[e];
                if (out_hops.empty() && back_hops.empty()) continue;  // nothing to ferry
                for (auto [obj, dir] : out_hops) round[vh].push_back(Action::pick(obj));
                round[vh].push_back(Action::move(rd[other]));
                for (auto [obj, dir] : out_hops) round[vh].push_back(Action::drop(obj));
                for (auto [obj, dir] : back_hops) round[vh].push_back(Action::pick(obj));
                round[vh].push_back(Action::move(rd[v]));
                for (auto [obj, dir] : back_hops) round[vh].push_back(Action::drop(obj));
            }
        }
    }
    return sched;
}

Schedule uncap_solve_minor_free(const WeightedGraph& g, const Instance& inst, int r) {
    inst.check();
    if (!inst.uncapacitated())
        throw std::invalid_argument("uncap_solve_minor_free: capacity must be slack");
    std::set<int> dset(inst.depots.begin(), inst.depots.end());
    for (const auto& dm : inst.demands)
        if (!dset.count(dm.s) || !dset.count(dm.t))
            throw std::invalid_argument("uncap_solve_minor_free: endpoints must be depots");

    std::vector<int> live;
    Rat gam(0);
    for (int i = 0; i < inst.m(); ++i)
        if (inst.demands[i].s != inst.demands[i].t) {
            live.push_back(i);
            gam = std::max(gam, inst.metric.at(inst.demands[i].s, inst.demands[i].t));
        }
    if (live.empty()) return Schedule::empty(inst.q());

    long long gamma = rat_ceil(gam);
    ClusterCover cover = split_cover(g, gamma, r, CoverMode::Sparse);

    std::map<int, int> pi;  // object -> cluster
    for (int i : live) {
        int c = cover.co_cluster(inst.demands[i].s, inst.demands[i].t);
        if (c < 0) throw std::logic_error("uncap_solve_minor_free: pair not co-clustered");
        pi[i] = c;
    }
    // centers on depot vertices whenever the cluster holds one
    std::vector<int> center(cover.clusters.size(), -1);
    for (int c = 0; c < static_cast<int>(cover.clusters.size()); ++c) {
        for (int v : cover.clusters[c])
            if (dset.count(v)) {
                center[c] = v;
                break;
            }
        if (center[c] < 0) center[c] = cover.clusters[c][0];
    }

    std::vector<int> rd(dset.begin(), dset.end());
    std::map<int, int> rep;
    for (int j = inst.q() - 1; j >= 0; --j) rep[inst.depots[j]] = j;

    Schedule sched = Schedule::empty(inst.q());
    auto& r1 = sched.add_round();
    for (int dv : rd) {
        int vh = rep[dv];
        std::vector<int> clusters;
        for (int c = 0; c < static_cast<int>(cover.clusters.size()); ++c)
            if (std::binary_search(cover.clusters[c].begin(), cover.clusters[c].end(), dv))
                clusters.push_back(c);
        bool any = false;
        for (int i : live)
            if (inst.demands[i].s == dv) any = true;
        if (!any) continue;
        for (int i : live)
            if (inst.demands[i].s == dv) r1[vh].push_back(Action::pick(i));
        for (int c : clusters) {
            r1[vh].push_back(Action::move(center[c]));
            for (int i : live)
                if (inst.demands[i].s == dv && pi[i] == c)
                    r1[vh].push_back(Action::drop(i));
        }
        r1[vh].push_back(Action::move(dv));
    }
    auto& r2 = sched.add_round();
    for (int dv : rd) {
        int vh = rep[dv];
        std::vector<int> clusters;
        for (int c = 0; c < static_cast<int>(cover.clusters.size()); ++c)
            if (std::binary_search(cover.clusters[c].begin(), cover.clusters[c].end(), dv))
                clusters.push_back(c);
        bool any = false;
        for (int i : live)
            if (inst.demands[i].t == dv) any = true;
        if (!any) continue;
        for (int c : clusters) {
            r2[vh].push_back(Action::move(center[c]));
            for (int i : live)
                if (inst.demands[i].t == dv && pi[i] == c) r2[vh].push_back(Action::pick(i));
        }
        r2[vh].push_back(Action::move(dv));
        for (int i : live)
            if (inst.demands[i].t == dv) r2[vh].push_back(Action::drop(i));
    }
    return sched;
}

std::pair<Schedule, SolveTrace> uncap_solve(const Instance& inst, const SolveConfig& cfg,
                                            UncapCore core) {
    inst.check();
    if (!inst.uncapacitated())
        throw std::invalid_argument("uncap_solve: requires slack capacity");
    SolveTrace trace;
    trace.lbs = lb_max(inst);

    std::vector<int> live;
    for (int i = 0; i < inst.m(); ++i)
        if (inst.demands[i].s != inst.demands[i].t) live.push_back(i);
    Schedule sched = Schedule::empty(inst.q());
    if (live.empty()) return {sched, trace};

    std::vector<int> terminals;
    for (int i : live) {
        terminals.push_back(inst.demands[i].s);
        terminals.push_back(inst.demands[i].t);
    }
    RootedForest forest = nsl_solve(inst.metric, inst.depots, terminals);

    auto tree_verts = [&](int j) {
        std::set<int> verts{inst.depots[j]};
        for (auto [u, v] : forest.trees[j]) {
            verts.insert(u);
            verts.insert(v);
        }
        return verts;
    };
    std::vector<std::set<int>> verts(inst.q());
    for (int j = 0; j < inst.q(); ++j) verts[j] = tree_verts(j);

    std::vector<int> src_tree(inst.m(), -1), dst_tree(inst.m(), -1);
    for (int i : live) {
        for (int j = 0; j < inst.q() && (src_tree[i] < 0 || dst_tree[i] < 0); ++j) {
            if (src_tree[i] < 0 && verts[j].count(inst.demands[i].s)) src_tree[i] = j;
            if (dst_tree[i] < 0 && verts[j].count(inst.demands[i].t)) dst_tree[i] = j;
        }
        if (src_tree[i] < 0 || dst_tree[i] < 0)
            throw std::logic_error("uncap_solve: terminal not covered by the forest");
    }

    // Euler route of a tree: preorder with explicit backtracking
    auto euler_route = [&](int j) {
        std::map<int, std::vector<int>> adj;
        for (auto [u, v] : forest.trees[j]) {
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        for (auto& [k, lst] : adj) std::sort(lst.begin(), lst.end());
        std::vector<int> route{inst.depots[j]};
        std::set<int> visited{inst.depots[j]};
        std::function<void(int)> dfs = [&](int u) {
            for (int v : adj[u]) {
                if (visited.count(v)) continue;
                visited.insert(v);
                route.push_back(v);
                dfs(v);
                route.push_back(u);
            }
        };
        dfs(inst.depots[j]);
        return route;
    };

    // phase 1: gather objects to their source depots
    auto& r1 = sched.add_round();
    for (int j = 0; j < inst.q(); ++j) {
        std::vector<int> mine;
        for (int i : live)
            if (src_tree[i] == j && inst.demands[i].s != inst.depots[j]) mine.push_back(i);
        if (mine.empty()) continue;
        auto route = euler_route(j);
        std::set<int> seen;
        for (std::size_t idx = 0; idx < route.size(); ++idx) {
            int v = route[idx];
            bool first = seen.insert(v).second;
            if (idx > 0) r1[j].push_back(Action::move(v));
            if (first)
                for (int i : mine)
                    if (inst.demands[i].s == v) r1[j].push_back(Action::pick(i));
        }
        for (int i : mine) r1[j].push_back(Action::drop(i));
    }

    // phase 2: move objects between depots
    Instance mid;
    mid.metric = inst.metric;
    mid.graph = inst.graph;
    mid.depots = inst.depots;
    mid.capacity = inst.capacity;
    std::vector<int> mid_to_global;
    for (int i : live) {
        int sdv = inst.depots[src_tree[i]], ddv = inst.depots[dst_tree[i]];
        if (sdv == ddv) continue;
        mid.demands.push_back({sdv, ddv, inst.demands[i].w});
        mid_to_global.push_back(i);
    }
    if (!mid.demands.empty()) {
        Schedule phase2;
        if (core == UncapCore::Spanner) {
            phase2 = depot_demand_schedule(mid);
        } else {
            if (!inst.graph)
                throw std::invalid_argument("uncap_solve: minor-free core needs a graph");
            phase2 = uncap_solve_minor_free(*inst.graph, mid, cfg.minor_r);
        }
        for (auto& round : phase2.rounds)
            for (auto& acts : round)
                for (auto& act : acts)
                    if (act.kind == Action::Kind::Pick || act.kind == Action::Kind::Drop)
                        act.obj = mid_to_global[act.obj];
        sched.append_sequential(phase2);
    }

    // phase 3: deliver from destination depots
    auto& r3 = sched.add_round();
    for (int j = 0; j < inst.q(); ++j) {
        std::vector<int> mine;
        for (int i : live)
            if (dst_tree[i] == j && inst.demands[i].t != inst.depots[j]) mine.push_back(i);
        if (mine.empty()) continue;
        for (int i : mine) r3[j].push_back(Action::pick(i));
        auto route = euler_route(j);
        std::set<int> seen;
        for (std::size_t idx = 0; idx < route.size(); ++idx) {
            int v = route[idx];
            bool first = seen.insert(v).second;
            if (idx > 0) r3[j].push_back(Action::move(v));
            if (first)
                for (int i : mine)
                    if (inst.demands[i].t == v) r3[j].push_back(Action::drop(i));
        }
    }

    trace.final_makespan = schedule_makespan(inst.metric, sched, inst.depots);
    return {sched, trace};
}

std::optional<Schedule> preproc_heavy(const Instance& inst, const std::vector<int>& vehicles,
                                      const std::vector<HeavyPair>& pairs, const Rat& bound,
                                      int depth, const SolveConfig& cfg, SolveTrace* trace) {
    const Metric& m = inst.metric;
    const long long k = inst.capacity;
    Schedule sched = Schedule::empty(inst.q());
    if (pairs.empty()) return sched;
    if (vehicles.empty()) return std::nullopt;

    for (const auto& pr : pairs) {
        long long dem = 0;
        for (int i : pr.objects) dem += inst.demands[i].w;
        if (2 * dem < k) throw std::invalid_argument("preproc_heavy: pair below k/2");
        if (m.at(pr.u, pr.v) > bound) return std::nullopt;  // max-pair promise broken
    }

    // decouple far-apart depot groups first
    if (auto split = mst_split(m, vehicles, inst.depots, Rat(3) * bound)) {
        auto [q1, q2] = *split;
        std::vector<int> d1, d2;
        for (int vh : q1) d1.push_back(inst.depots[vh]);
        for (int vh : q2) d2.push_back(inst.depots[vh]);
        std::vector<HeavyPair> p1, p2;
        for (const auto& pr : pairs) {
            auto within = [&](const std::vector<int>& dverts, int v) {
                for (int dv : dverts)
                    if (m.at(dv, v) <= bound) return true;
                return false;
            };
            if (within(d1, pr.u) && within(d1, pr.v))
                p1.push_back(pr);
            else if (within(d2, pr.u) && within(d2, pr.v))
                p2.push_back(pr);
            else
                return std::nullopt;
        }
        auto r1 = preproc_heavy(inst, q1, p1, bound, depth, cfg, trace);
        if (!r1) return std::nullopt;
        auto r2 = preproc_heavy(inst, q2, p2, bound, depth, cfg, trace);
        if (!r2) return std::nullopt;
        r1->merge_parallel(*r2);
        return r1;
    }

    // per-pair partition into parts of weight in (k/2, k], last part free
    struct Part {
        int pair_idx;
        std::vector<int> objects;
    };
    std::vector<Part> parts;
    std::vector<Demand> part_demands;
    for (int pi = 0; pi < static_cast<int>(pairs.size()); ++pi) {
        const auto& pr = pairs[pi];
        std::vector<int> objs = pr.objects;
        std::sort(objs.begin(), objs.end(), [&](int a, int b) {
            if (inst.demands[a].w != inst.demands[b].w)
                return inst.demands[a].w > inst.demands[b].w;
            return a < b;
        });
        Part cur{pi, {}};
        long long w = 0;
        int emitted = 0;
        for (int o : objs) {
            if (!cur.objects.empty() && w + inst.demands[o].w > k) {
                if (2 * w < k)
                    throw std::logic_error("preproc_heavy: closed part below k/2");
                parts.push_back(cur);
                part_demands.push_back({pr.u, pr.v, 1});
                ++emitted;
                cur = Part{pi, {}};
                w = 0;
            }
            cur.objects.push_back(o);
            w += inst.demands[o].w;
        }
        parts.push_back(cur);
        part_demands.push_back({pr.u, pr.v, 1});
        ++emitted;
        long long dem = 0;
        for (int o : pr.objects) dem += inst.demands[o].w;
        if (Rat(emitted) > Rat(4 * dem, k))
            throw std::logic_error("preproc_heavy: part count bound violated");
    }

    // unit-capacity tour over the parts, rooted at the lowest depot vertex
    int root = inst.depots[vehicles[0]];
    for (int vh : vehicles) root = std::min(root, inst.depots[vh]);
    SingleTour tour = stacker_crane(m, part_demands, root);
    Rat limit = Rat(16) * Rat(static_cast<long long>(vehicles.size())) * bound;
    if (tour.length > limit) return std::nullopt;

    if (vehicles.size() == 1) {
        int vh = vehicles[0];
        int dv = inst.depots[vh];
        auto& round = sched.add_round();
        for (std::size_t si = 0; si < tour.stops.size(); ++si) {
            if (si > 0 || tour.stops[si].v != dv)
                round[vh].push_back(Action::move(tour.stops[si].v));
            for (int p : tour.stops[si].picks)
                for (int o : parts[p].objects) round[vh].push_back(Action::pick(o));
            for (int p : tour.stops[si].drops)
                for (int o : parts[p].objects) round[vh].push_back(Action::drop(o));
        }
        if (tour.stops.empty() || tour.stops.back().v != dv)
            round[vh].push_back(Action::move(dv));
        return sched;
    }

    // cut at zero-load boundaries near multiples of 16B
    std::vector<Rat> cum;
    auto legs = tour_legs(m, tour, cum);
    std::vector<Rat> boundaries{Rat(0)};
    {
        std::set<int> carrying;
        for (int i = 0; i < static_cast<int>(tour.stops.size()); ++i) {
            for (int p : tour.stops[i].picks) carrying.insert(p);
            for (int p : tour.stops[i].drops) carrying.erase(p);
            if (carrying.empty()) boundaries.push_back(cum[i]);
        }
        boundaries.push_back(tour.length);
    }
    std::vector<Rat> cuts;
    for (long long p = 1; Rat(16 * p) * bound < tour.length; ++p) {
        Rat ideal = Rat(16 * p) * bound;
        auto it = std::lower_bound(boundaries.begin(), boundaries.end(), ideal);
        if (it == boundaries.end()) break;
        if (*it > Rat(0) && *it < tour.length && (cuts.empty() || *it > cuts.back()))
            cuts.push_back(*it);
    }
    std::vector<Rat> bnds{Rat(0)};
    for (const Rat& c : cuts) bnds.push_back(c);
    bnds.push_back(tour.length);
    int np = static_cast<int>(bnds.size()) - 1;
    if (np > static_cast<int>(vehicles.size())) return std::nullopt;

    // piece membership per part (legs never straddle zero-load cuts)
    std::vector<std::vector<int>> piece_parts(np);
    std::vector<std::vector<int>> piece_stops(np);
    for (const auto& lg : legs) {
        int idx = 0;
        for (const Rat& c : cuts)
            if (c <= lg.a) ++idx;
        if (lg.b > bnds[idx + 1])
            throw std::logic_error("preproc_heavy: part straddles a cut");
        piece_parts[idx].push_back(lg.obj);
    }
    for (int i = 0; i < static_cast<int>(tour.stops.size()); ++i) {
        int idx = 0;
        for (const Rat& c : cuts)
            if (c <= cum[i]) ++idx;
        if (idx < np) piece_stops[idx].push_back(i);
        if (idx > 0 && cum[i] == bnds[idx]) piece_stops[idx - 1].push_back(i);
    }

    std::vector<int> nontrivial;
    for (int p = 0; p < np; ++p)
        if (!piece_parts[p].empty()) nontrivial.push_back(p);

    std::vector<std::vector<int>> adj(nontrivial.size());
    for (std::size_t a = 0; a < nontrivial.size(); ++a) {
        for (int j = 0; j < static_cast<int>(vehicles.size()); ++j) {
            Rat best(-1);
            for (int si : piece_stops[nontrivial[a]]) {
                Rat d = m.at(inst.depots[vehicles[j]], tour.stops[si].v);
                if (best < Rat(0) || d < best) best = d;
            }
            if (best >= Rat(0) && best <= Rat(2) * bound) adj[a].push_back(j);
        }
    }
    RebalanceResult reb =
        max_contracting_set(static_cast<int>(nontrivial.size()),
                            static_cast<int>(vehicles.size()), adj);
    std::set<int> s_set(reb.S.begin(), reb.S.end());

    std::set<int> c_pairs;  // pairs touched by an S piece
    for (int sp : reb.S)
        for (int part : piece_parts[nontrivial[sp]]) c_pairs.insert(parts[part].pair_idx);

    std::optional<Schedule> rec;
    if (!c_pairs.empty()) {
        std::vector<int> gamma_vehicles;
        for (int j : reb.gamma_s) gamma_vehicles.push_back(vehicles[j]);
        if (gamma_vehicles.empty()) return std::nullopt;
        if (depth + 1 > ceil_log2(inst.q()) + 2) return std::nullopt;
        std::vector<HeavyPair> sub;
        for (int pi : c_pairs) sub.push_back(pairs[pi]);
        rec = preproc_heavy(inst, gamma_vehicles, sub, bound, depth + 1, cfg, trace);
        if (!rec) return std::nullopt;
    }

    auto& round = sched.add_round();
    for (std::size_t a = 0; a < nontrivial.size(); ++a) {
        if (s_set.count(static_cast<int>(a))) continue;
        int vh = vehicles[reb.pi[a]];
        bool has = false;
        for (int part : piece_parts[nontrivial[a]])
            if (!c_pairs.count(parts[part].pair_idx)) has = true;
        if (!has) continue;
        for (int si : piece_stops[nontrivial[a]]) {
            round[vh].push_back(Action::move(tour.stops[si].v));
            for (int p : tour.stops[si].picks)
                if (!c_pairs.count(parts[p].pair_idx))
                    for (int o : parts[p].objects) round[vh].push_back(Action::pick(o));
            for (int p : tour.stops[si].drops)
                if (!c_pairs.count(parts[p].pair_idx))
                    for (int o : parts[p].objects) round[vh].push_back(Action::drop(o));
        }
        round[vh].push_back(Action::move(inst.depots[vh]));
    }
    if (rec) sched.merge_parallel(*rec);

    Rat ms = schedule_makespan(m, sched, inst.depots);
    if (ms > Rat(100) * bound) throw std::logic_error("preproc_heavy: makespan too large");
    if (trace && bound > Rat(0))
        trace->preproc_ratio = std::max(trace->preproc_ratio, ms / bound);
    return sched;
}

namespace {

void expand_objects(Schedule& sched, const std::vector<std::vector<int>>& members) {
    for (auto& round : sched.rounds)
        for (auto& acts : round) {
            std::vector<Action> out;
            for (const auto& act : acts) {
                if (act.kind == Action::Kind::Pick || act.kind == Action::Kind::Drop) {
                    for (int o : members[act.obj]) {
                        Action a = act;
                        a.obj = o;
                        out.push_back(a);
                    }
                } else {
                    out.push_back(act);
                }
            }
            acts = std::move(out);
        }
}

}  // namespace

std::pair<Schedule, SolveTrace> weighted_solve(const Instance& inst, const SolveConfig& cfg,
                                               std::optional<Rat> bound_hint) {
    inst.check();
    SolveTrace trace;
    trace.lbs = lb_max(inst);
    const long long k = inst.capacity;

    std::map<std::pair<int, int>, std::vector<int>> by_pair;
    for (int i = 0; i < inst.m(); ++i)
        if (inst.demands[i].s != inst.demands[i].t)
            by_pair[{inst.demands[i].s, inst.demands[i].t}].push_back(i);
    Schedule sched = Schedule::empty(inst.q());
    if (by_pair.empty()) return {sched, trace};

    std::vector<HeavyPair> heavy;
    std::vector<std::pair<std::pair<int, int>, long long>> light;  // pair -> dem
    for (const auto& [pv, objs] : by_pair) {
        long long dem = 0;
        for (int i : objs) dem += inst.demands[i].w;
        if (2 * dem >= k)
            heavy.push_back({pv.first, pv.second, objs});
        else
            light.push_back({pv, dem});
    }

    // aggregated light instance: one object per light pair
    Instance agg;
    agg.metric = inst.metric;
    agg.graph = inst.graph;
    agg.depots = inst.depots;
    agg.capacity = k;
    std::vector<std::vector<int>> members;
    for (const auto& [pv, dem] : light) {
        agg.demands.push_back({pv.first, pv.second, dem});
        members.push_back(by_pair.at(pv));
    }
    Rat rho = Rat(cfg.c_rho) * Rat(ceil_log2(inst.n() + 2)) *
              Rat(ceil_log2(static_cast<long long>(agg.demands.size()) + 2));
    int max_iter = 2;
    if (!agg.demands.empty()) {
        double need = std::log(static_cast<double>(agg.demands.size())) / std::log(4.0 / 3.0);
        max_iter = static_cast<int>(need) + 2;
    }

    std::vector<int> all_vehicles(inst.q());
    for (int j = 0; j < inst.q(); ++j) all_vehicles[j] = j;
    std::vector<int> agg_ids(agg.demands.size());
    for (std::size_t i = 0; i < agg_ids.size(); ++i) agg_ids[i] = static_cast<int>(i);

    Rat b = bound_hint.value_or(trace.lbs.combined > Rat(0) ? trace.lbs.combined : Rat(1));
    if (b <= Rat(0)) b = Rat(1);
    for (int doubling = 0; doubling < 64; ++doubling) {
        trace.guessed_bs.push_back(b);
        auto phase1 = preproc_heavy(inst, all_vehicles, heavy, b, 0, cfg, &trace);
        if (!phase1) {
            b *= Rat(2);
            continue;
        }
        Schedule attempt = *phase1;
        bool ok = true;
        if (!agg.demands.empty()) {
            std::set<int> uncovered(agg_ids.begin(), agg_ids.end());
            for (int it = 0; it < max_iter && !uncovered.empty(); ++it) {
                std::vector<int> want(uncovered.begin(), uncovered.end());
                auto res = partial(agg, all_vehicles, want, b, rho, 0, cfg, &trace);
                if (!res) {
                    ok = false;
                    break;
                }
                Schedule expanded = res->schedule;
                expand_objects(expanded, members);
                attempt.append_sequential(expanded);
                for (int i : res->covered) uncovered.erase(i);
            }
            if (!uncovered.empty()) ok = false;
        }
        if (ok) {
            trace.final_makespan = schedule_makespan(inst.metric, attempt, inst.depots);
            return {attempt, trace};
        }
        b *= Rat(2);
    }
    throw std::logic_error("weighted_solve: bound search did not converge");
}

}  // namespace daride
