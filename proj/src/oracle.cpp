#include "daride/oracle.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>

#include "daride/errors.hpp"
#include "daride/lower_bounds.hpp"

namespace daride {

namespace {

struct ObjSt {
    int at = 0;        // vertex, meaningful when carrier < 0
    int carrier = -1;  // vehicle index or -1
    Rat avail{0};      // time the object became available at `at`
    bool frozen = false;  // parked at its destination, never touched again
};

struct SearchState {
    std::vector<int> pos;     // vehicle vertices
    std::vector<Rat> time;    // vehicle clocks
    std::vector<ObjSt> objs;
};

struct PlannedAction {
    int vehicle = 0;
    int to = 0;
    std::vector<int> drops;      // preemptive drops (non-destination)
    std::vector<int> forced;     // drops at the destination
    std::vector<int> picks;
    Rat depart{0};               // vehicle clock after the whole bundle
};

class Oracle {
  public:
    explicit Oracle(const Instance& inst) : inst_(inst), m_(inst.metric) {}

    OracleResult run() {
        Rat limit = lb_max(inst_).combined;
        // safety roof: one vehicle serves everything sequentially
        Rat roof(0);
        {
            int pos = inst_.depots[0];
            for (const auto& dm : inst_.demands) {
                roof += m_.at(pos, dm.s) + m_.at(dm.s, dm.t);
                pos = dm.t;
            }
            roof += m_.at(pos, inst_.depots[0]);
        }
        for (int round = 0; round < 1000; ++round) {
            best_.reset();
            overshoot_.reset();
            memo_.clear();
            SearchState st;
            st.pos = inst_.depots;
            st.time.assign(inst_.q(), Rat(0));
            st.objs.resize(inst_.m());
            for (int i = 0; i < inst_.m(); ++i) {
                st.objs[i].at = inst_.demands[i].s;
                st.objs[i].frozen = inst_.demands[i].s == inst_.demands[i].t;
            }
            limit_ = limit;
            stack_.clear();
            dfs(st);
            if (best_) {
                OracleResult out;
                out.optimum = *best_;
                out.witness = build_witness();
                return out;
            }
            if (!overshoot_ || *overshoot_ > roof) limit = roof;
            else limit = *overshoot_;
        }
        throw std::logic_error("oracle_makespan: iterative deepening did not converge");
    }

  private:
    Rat completion_of(const SearchState& st) const {
        Rat c(0);
        for (int j = 0; j < inst_.q(); ++j)
            c = std::max(c, st.time[j] + m_.at(st.pos[j], inst_.depots[j]));
        return c;
    }

    Rat min_depot_dist(int v) const {
        Rat best = m_.at(v, inst_.depots[0]);
        for (int r : inst_.depots) best = std::min(best, m_.at(v, r));
        return best;
    }

    Rat f_estimate(const SearchState& st) const {
        Rat f = completion_of(st);
        for (int i = 0; i < inst_.m(); ++i) {
            const auto& o = st.objs[i];
            if (o.frozen) continue;
            int dest = inst_.demands[i].t;
            if (o.carrier >= 0) {
                int j = o.carrier;
                f = std::max(f, st.time[j] + m_.at(st.pos[j], dest) + min_depot_dist(dest));
            } else {
                Rat reach = st.time[0] + m_.at(st.pos[0], o.at);
                for (int j = 0; j < inst_.q(); ++j)
                    reach = std::min(reach, st.time[j] + m_.at(st.pos[j], o.at));
                Rat start = std::max(o.avail, reach);
                f = std::max(f, start + m_.at(o.at, dest) + min_depot_dist(dest));
            }
        }
        return f;
    }

    bool all_frozen(const SearchState& st) const {
        for (const auto& o : st.objs)
            if (!o.frozen) return false;
        return true;
    }

    // discrete signature + dominance over (vehicle times, avail times)
    bool dominated(const SearchState& st) {
        std::vector<int> key;
        for (int p : st.pos) key.push_back(p);
        for (const auto& o : st.objs)
            key.push_back(o.frozen ? -2 : (o.carrier >= 0 ? -3 - o.carrier : o.at));
        std::vector<Rat> vec = st.time;
        for (const auto& o : st.objs)
            if (!o.frozen && o.carrier < 0) vec.push_back(o.avail);
        auto& pareto = memo_[key];
        for (const auto& old : pareto) {
            bool dom = true;
            for (std::size_t i = 0; i < vec.size(); ++i)
                if (old[i] > vec[i]) {
                    dom = false;
                    break;
                }
            if (dom) return true;
        }
        pareto.erase(std::remove_if(pareto.begin(), pareto.end(),
                                    [&](const std::vector<Rat>& old) {
                                        for (std::size_t i = 0; i < vec.size(); ++i)
                                            if (vec[i] > old[i]) return false;
                                        return true;
                                    }),
                     pareto.end());
        pareto.push_back(vec);
        return false;
    }

    void dfs(SearchState& st) {
        if (f_estimate(st) > limit_) {
            Rat f = f_estimate(st);
            if (!overshoot_ || f < *overshoot_) overshoot_ = f;
            return;
        }
        if (all_frozen(st)) {
            Rat c = completion_of(st);
            if (!best_ || c < *best_) {
                best_ = c;
                best_stack_ = stack_;
            }
            return;
        }
        if (dominated(st)) return;

        for (int j = 0; j < inst_.q(); ++j) {
            for (int u = 0; u < inst_.n(); ++u) {
                Rat arrive = st.time[j] + m_.at(st.pos[j], u);
                // objects this vehicle could drop or pick at u
                std::vector<int> forced, droppable, pickable;
                long long carried_w = 0;
                for (int i = 0; i < inst_.m(); ++i) {
                    const auto& o = st.objs[i];
                    if (o.carrier == j) {
                        carried_w += inst_.demands[i].w;
                        if (inst_.demands[i].t == u)
                            forced.push_back(i);
                        else
                            droppable.push_back(i);
                    } else if (!o.frozen && o.carrier < 0 && o.at == u) {
                        pickable.push_back(i);
                    }
                }
                bool stay = u == st.pos[j];
                int nd = static_cast<int>(droppable.size());
                int np = static_cast<int>(pickable.size());
                for (int dmask = 0; dmask < (1 << nd); ++dmask) {
                    for (int pmask = 0; pmask < (1 << np); ++pmask) {
                        if (stay && forced.empty() && dmask == 0 && pmask == 0)
                            continue;  // pure no-op
                        long long w = carried_w;
                        Rat depart = arrive;
                        for (int b = 0; b < nd; ++b)
                            if (dmask & (1 << b)) w -= inst_.demands[droppable[b]].w;
                        for (int i : forced) w -= inst_.demands[i].w;
                        bool ok = true;
                        for (int b = 0; b < np; ++b)
                            if (pmask & (1 << b)) {
                                int i = pickable[b];
                                w += inst_.demands[i].w;
                                depart = std::max(depart, st.objs[i].avail);
                            }
                        if (!ok || w > inst_.capacity) continue;

                        PlannedAction act;
                        act.vehicle = j;
                        act.to = u;
                        act.forced = forced;
                        for (int b = 0; b < nd; ++b)
                            if (dmask & (1 << b)) act.drops.push_back(droppable[b]);
                        for (int b = 0; b < np; ++b)
                            if (pmask & (1 << b)) act.picks.push_back(pickable[b]);
                        act.depart = depart;

                        SearchState next = st;
                        next.pos[j] = u;
                        next.time[j] = depart;
                        for (int i : act.forced) {
                            next.objs[i] = {u, -1, arrive, true};
                        }
                        for (int i : act.drops) next.objs[i] = {u, -1, arrive, false};
                        for (int i : act.picks) {
                            next.objs[i].carrier = j;
                            next.objs[i].frozen = false;
                        }
                        stack_.push_back(act);
                        dfs(next);
                        stack_.pop_back();
                    }
                }
            }
        }
    }

    // Converts the recorded action sequence into barrier rounds: a pick of an
    // object dropped by another vehicle lands in a strictly later round.
    Schedule build_witness() const {
        struct DropInfo {
            int round = -1;
            int vehicle = -1;
        };
        std::map<int, DropInfo> last_drop;  // object -> info (initially virtual)
        std::vector<int> veh_round(inst_.q(), 0);
        std::vector<std::vector<std::vector<Action>>> per_round;  // [round][vehicle]

        auto ensure_round = [&](int r) {
            while (static_cast<int>(per_round.size()) <= r)
                per_round.push_back(std::vector<std::vector<Action>>(inst_.q()));
        };
        for (const auto& act : best_stack_) {
            int r = veh_round[act.vehicle];
            for (int i : act.picks) {
                auto it = last_drop.find(i);
                if (it != last_drop.end() && it->second.vehicle != act.vehicle)
                    r = std::max(r, it->second.round + 1);
                if (it != last_drop.end() && it->second.vehicle == act.vehicle)
                    r = std::max(r, it->second.round);
            }
            veh_round[act.vehicle] = r;
            ensure_round(r);
            auto& acts = per_round[r][act.vehicle];
            acts.push_back(Action::move(act.to));
            for (int i : act.forced) acts.push_back(Action::drop(i));
            for (int i : act.drops) acts.push_back(Action::drop(i));
            for (int i : act.picks) acts.push_back(Action::pick(i));
            for (int i : act.forced) last_drop[i] = {r, act.vehicle};
            for (int i : act.drops) last_drop[i] = {r, act.vehicle};
        }
        Schedule sched = Schedule::empty(inst_.q());
        for (auto& round : per_round) sched.rounds.push_back(std::move(round));
        if (sched.num_rounds() == 0 && inst_.m() > 0) sched.add_round();
        // send everyone home in their last active round
        for (int j = 0; j < inst_.q(); ++j) {
            for (int r = sched.num_rounds() - 1; r >= 0; --r) {
                if (!sched.rounds[r][j].empty()) {
                    sched.rounds[r][j].push_back(Action::move(inst_.depots[j]));
                    break;
                }
            }
        }
        return sched;
    }

    const Instance& inst_;
    const Metric& m_;
    Rat limit_{0};
    std::optional<Rat> best_;
    std::optional<Rat> overshoot_;
    std::vector<PlannedAction> stack_, best_stack_;
    std::map<std::vector<int>, std::vector<std::vector<Rat>>> memo_;
};

}  // namespace

OracleResult oracle_makespan(const Instance& inst) {
    inst.check();
    if (inst.n() > 6) throw SizeLimitError("oracle_makespan: n > 6");
    if (inst.m() > 3) throw SizeLimitError("oracle_makespan: m > 3");
    if (inst.q() > 2) throw SizeLimitError("oracle_makespan: q > 2");
    if (inst.capacity > 2) throw SizeLimitError("oracle_makespan: k > 2");
    Oracle o(inst);
    return o.run();
}

Rat oracle_cvrp(const Metric& m, int depot, const std::vector<int>& dests, long long k) {
    int n = static_cast<int>(dests.size());
    if (n > 10) throw SizeLimitError("oracle_cvrp: more than 10 destinations");
    if (n == 0) return Rat(0);
    Rat inf(1000000000LL);

    // path DP over destination subsets from the depot
    std::vector<std::vector<Rat>> dp(1 << n, std::vector<Rat>(n, inf));
    for (int v = 0; v < n; ++v) dp[1 << v][v] = m.at(depot, dests[v]);
    for (int mask = 1; mask < (1 << n); ++mask)
        for (int v = 0; v < n; ++v) {
            if (!(mask & (1 << v)) || dp[mask][v] == inf) continue;
            for (int u = 0; u < n; ++u) {
                if (mask & (1 << u)) continue;
                Rat c = dp[mask][v] + m.at(dests[v], dests[u]);
                if (c < dp[mask | (1 << u)][u]) dp[mask | (1 << u)][u] = c;
            }
        }
    std::vector<Rat> trip(1 << n, Rat(0));
    for (int mask = 1; mask < (1 << n); ++mask) {
        Rat best = inf;
        for (int v = 0; v < n; ++v)
            if ((mask & (1 << v)) && dp[mask][v] < inf)
                best = std::min(best, dp[mask][v] + m.at(dests[v], depot));
        trip[mask] = best;
    }
    std::vector<Rat> f(1 << n, inf);
    f[0] = Rat(0);
    for (int mask = 1; mask < (1 << n); ++mask)
        for (int sub = mask; sub > 0; sub = (sub - 1) & mask) {
            if (__builtin_popcount(static_cast<unsigned>(sub)) > k) continue;
            if (f[mask ^ sub] == inf) continue;
            Rat c = f[mask ^ sub] + trip[sub];
            if (c < f[mask]) f[mask] = c;
        }
    return f[(1 << n) - 1];
}

}  // namespace daride
