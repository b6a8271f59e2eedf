#include "daride/single_vehicle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "daride/cover.hpp"
#include "daride/hst.hpp"

namespace daride {

Rat SingleTour::delay_sum() const {
    Rat sum(0);
    for (const auto& [id, d] : delay) sum += d;
    return sum;
}

Schedule SingleTour::to_schedule() const {
    Schedule sched = Schedule::empty(1);
    auto& round = sched.add_round();
    for (std::size_t i = 0; i < stops.size(); ++i) {
        if (i > 0) round[0].push_back(Action::move(stops[i].v));
        for (int o : stops[i].picks) round[0].push_back(Action::pick(o));
        for (int o : stops[i].drops) round[0].push_back(Action::drop(o));
    }
    if (!stops.empty() && stops.back().v != root) round[0].push_back(Action::move(root));
    return sched;
}

namespace {

// Appends stops while keeping the pick-before-drop order inside each stop.
struct TourBuilder {
    const Metric& m;
    SingleTour t;

    TourBuilder(const Metric& metric, int root) : m(metric) {
        t.root = root;
        t.stops.push_back({root, {}, {}});
    }
    int cur() const { return t.stops.back().v; }
    void move(int v) {
        if (v == cur()) return;
        t.length += m.at(cur(), v);
        t.stops.push_back({v, {}, {}});
    }
    void pick(int id) {
        if (!t.stops.back().drops.empty()) t.stops.push_back({cur(), {}, {}});
        t.stops.back().picks.push_back(id);
    }
    void drop(int id) { t.stops.back().drops.push_back(id); }
    void add_delay(int id, const Rat& d) {
        auto it = t.delay.find(id);
        if (it == t.delay.end())
            t.delay[id] = d;
        else
            it->second += d;
    }
    SingleTour finish() {
        move(t.root);
        return std::move(t);
    }
    // replays a sub-tour (stops, delays) into this tour
    void splice(const SingleTour& sub) {
        for (const auto& stop : sub.stops) {
            move(stop.v);
            for (int o : stop.picks) pick(o);
            for (int o : stop.drops) drop(o);
        }
        t.length += Rat(0);
        for (const auto& [id, d] : sub.delay) add_delay(id, d);
    }
};

}  // namespace

CheckpointSet select_checkpoints(const Metric& m, const Tour& tour, const Rat& beta) {
    if (beta <= Rat(1)) throw std::invalid_argument("select_checkpoints: beta must exceed 1");
    CheckpointSet cs;
    int M = static_cast<int>(tour.order.size());
    int last = 0;
    Rat walked(0);  // tour path length from `last` to the current position
    for (int u = 1; u < M; ++u) {
        walked += m.at(tour.order[u - 1], tour.order[u]);
        Rat direct = m.at(tour.order[0], tour.order[u]);
        if (m.at(tour.order[0], tour.order[last]) + walked > beta * direct) {
            cs.cps.push_back(u);
            last = u;
            walked = Rat(0);
        }
    }
    // property 1, checked for every sub-tour including the last
    {
        std::vector<int> bounds = cs.cps;
        bounds.push_back(M);
        int prev = 0;
        for (int b : bounds) {
            Rat path(0);
            for (int u = prev; u < b; ++u) {
                if (u > prev) path += m.at(tour.order[u - 1], tour.order[u]);
                if (m.at(tour.order[0], tour.order[prev]) + path >
                    beta * m.at(tour.order[0], tour.order[u]))
                    throw std::logic_error("select_checkpoints: property 1 violated");
            }
            prev = b;
        }
    }
    // property 2
    Rat sum(0);
    for (int cp : cs.cps) sum += m.at(tour.order[0], tour.order[cp]);
    if (sum * (beta - Rat(1)) > tour.length)
        throw std::logic_error("select_checkpoints: property 2 violated");
    return cs;
}

namespace {

// Slot-space rotation grouping. Items are laid out as weight-length intervals
// and cut every k slots at offset sigma; an item with a cut strictly inside
// becomes its own group. For unit weights this is exactly the k contiguous
// groupings obtained by rotating the indexing.
std::vector<std::vector<int>> slot_grouping(const std::vector<CvrpItem>& items,
                                            long long k, long long sigma) {
    std::vector<std::vector<int>> groups;
    long long off = 0;
    std::vector<long long> start(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
        start[i] = off;
        off += items[i].weight;
    }
    auto cut_inside = [&](long long a, long long b) {
        // is there a cut position c == sigma (mod k), c > 0, with a < c < b?
        if (b - a <= 0) return false;
        long long c = a - ((a - sigma) % k + k) % k + k;  // first cut > a
        return c < b;
    };
    auto cut_at = [&](long long x) { return ((x - sigma) % k + k) % k == 0; };
    std::vector<int> run;
    for (std::size_t i = 0; i < items.size(); ++i) {
        bool straddle = cut_inside(start[i], start[i] + items[i].weight);
        bool break_before = straddle || (i > 0 && cut_inside(start[i - 1], start[i])) ||
                            (start[i] > 0 && cut_at(start[i]));
        if (break_before && !run.empty()) {
            groups.push_back(run);
            run.clear();
        }
        run.push_back(static_cast<int>(i));
        if (straddle) {
            groups.push_back(run);
            run.clear();
        }
    }
    if (!run.empty()) groups.push_back(run);
    return groups;
}

std::vector<std::vector<int>> greedy_grouping(const std::vector<CvrpItem>& items,
                                              long long k) {
    std::vector<std::vector<int>> groups;
    std::vector<int> run;
    long long w = 0;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (!run.empty() && w + items[i].weight > k) {
            groups.push_back(run);
            run.clear();
            w = 0;
        }
        run.push_back(static_cast<int>(i));
        w += items[i].weight;
    }
    if (!run.empty()) groups.push_back(run);
    return groups;
}

Rat grouping_cost(const Metric& m, int depot, const std::vector<CvrpItem>& items,
                  const std::vector<std::vector<int>>& groups) {
    Rat total(0);
    for (const auto& g : groups) {
        int prev = depot;
        for (int idx : g) {
            total += m.at(prev, items[idx].vertex);
            prev = items[idx].vertex;
        }
        total += m.at(prev, depot);
    }
    return total;
}

}  // namespace

SingleTour cvrp_bounded_delay(const Metric& m, int depot, std::vector<CvrpItem> items,
                              long long k, const Rat& beta) {
    if (beta <= Rat(1)) throw std::invalid_argument("cvrp_bounded_delay: beta must exceed 1");
    if (k < 1) throw std::invalid_argument("cvrp_bounded_delay: capacity must be >= 1");
    bool unit = true;
    for (const auto& it : items) {
        if (it.weight < 1 || it.weight > k)
            throw std::invalid_argument("cvrp_bounded_delay: item weight out of range");
        if (it.weight != 1) unit = false;
    }
    TourBuilder builder(m, depot);
    if (items.empty()) return builder.finish();

    std::vector<int> verts{depot};
    for (const auto& it : items) verts.push_back(it.vertex);
    Tour C = tsp_tour(m, verts);
    auto cps = select_checkpoints(m, C, beta);

    std::map<int, int> pos_of;
    for (int i = 0; i < static_cast<int>(C.order.size()); ++i) pos_of[C.order[i]] = i;
    std::sort(items.begin(), items.end(), [&](const CvrpItem& a, const CvrpItem& b) {
        int pa = pos_of[a.vertex], pb = pos_of[b.vertex];
        return pa != pb ? pa < pb : a.id < b.id;
    });

    std::vector<int> bounds = cps.cps;
    bounds.push_back(static_cast<int>(C.order.size()));

    std::size_t next = 0;
    for (int b : bounds) {
        std::vector<CvrpItem> part;
        while (next < items.size() && pos_of[items[next].vertex] < b)
            part.push_back(items[next++]);
        if (part.empty()) continue;

        std::vector<std::vector<int>> best = greedy_grouping(part, k);
        Rat best_cost = grouping_cost(m, depot, part, best);
        for (long long sigma = 0; sigma < k; ++sigma) {
            auto g = slot_grouping(part, k, sigma);
            Rat c = grouping_cost(m, depot, part, g);
            if (c < best_cost) {
                best_cost = c;
                best = std::move(g);
            }
        }
        for (const auto& group : best) {
            long long gw = 0;
            for (int idx : group) gw += part[idx].weight;
            if (gw > k) throw std::logic_error("cvrp_bounded_delay: group over capacity");
            for (int idx : group) builder.pick(part[idx].id);
            Rat dist(0);
            for (int idx : group) {
                dist += m.at(builder.cur(), part[idx].vertex);
                builder.move(part[idx].vertex);
                builder.drop(part[idx].id);
                builder.add_delay(part[idx].id, dist);
                if (dist > beta * m.at(depot, part[idx].vertex))
                    throw std::logic_error("cvrp_bounded_delay: delay bound violated");
            }
            builder.move(depot);
        }
    }
    SingleTour tour = builder.finish();

    Rat flow_term(0);
    for (const auto& it : items) flow_term += Rat(it.weight) * m.at(depot, it.vertex);
    Rat two_over = Rat(2) / (beta - Rat(1));
    Rat bound = unit ? (Rat(1) + two_over) * C.length + Rat(2) * flow_term / Rat(k)
                     : (Rat(3) + two_over) * C.length + Rat(4) * flow_term / Rat(k);
    if (tour.length > bound)
        throw std::logic_error("cvrp_bounded_delay: length chain violated");
    return tour;
}

SingleTour cvrp_collect(const Metric& m, int depot, std::vector<CvrpItem> items,
                        long long k, const Rat& beta) {
    SingleTour fwd = cvrp_bounded_delay(m, depot, std::move(items), k, beta);
    SingleTour rev;
    rev.root = depot;
    rev.length = fwd.length;
    rev.delay = fwd.delay;
    for (auto it = fwd.stops.rbegin(); it != fwd.stops.rend(); ++it)
        rev.stops.push_back({it->v, it->drops, it->picks});
    return rev;
}

namespace {

std::vector<int> preorder_index(const HstTree& t) {
    std::vector<int> idx(t.nodes.size(), 0);
    int counter = 0;
    std::vector<int> stack{t.root};
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        idx[u] = counter++;
        const auto& ch = t.nodes[u].children;
        for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
    }
    return idx;
}

int lowest_endpoint(const std::vector<Demand>& demands) {
    int root = demands[0].s;
    for (const auto& dm : demands) root = std::min({root, dm.s, dm.t});
    return root;
}

// serves all s==t demands by touching each vertex once
void serve_zero_demands(TourBuilder& builder, const std::vector<Demand>& demands,
                        const std::vector<int>& ids) {
    std::map<int, std::vector<int>> by_vertex;
    for (int i : ids) by_vertex[demands[i].s].push_back(i);
    for (const auto& [v, lst] : by_vertex) {
        builder.move(v);
        for (int i : lst) {
            builder.pick(i);
            builder.drop(i);
            builder.add_delay(i, Rat(0));
        }
    }
}

}  // namespace

SingleTour preemptive_tour(const Metric& m, const std::vector<Demand>& demands,
                           long long k, std::uint64_t seed, const SolveConfig& cfg) {
    if (demands.empty()) {
        TourBuilder builder(m, 0);
        return builder.finish();
    }
    int root = lowest_endpoint(demands);
    std::vector<int> zero_ids, live_ids;
    for (int i = 0; i < static_cast<int>(demands.size()); ++i)
        (demands[i].s == demands[i].t ? zero_ids : live_ids).push_back(i);

    std::vector<int> endpoints;
    for (const auto& dm : demands) {
        endpoints.push_back(dm.s);
        endpoints.push_back(dm.t);
    }
    std::sort(endpoints.begin(), endpoints.end());
    endpoints.erase(std::unique(endpoints.begin(), endpoints.end()), endpoints.end());

    Rat steiner_proxy = tsp_tour(m, endpoints).length / Rat(2);
    Rat flow(0), pair_sum(0);
    for (const auto& dm : demands) {
        flow += Rat(dm.w) * m.at(dm.s, dm.t);
        pair_sum += m.at(dm.s, dm.t);
    }
    flow /= Rat(k);
    Rat lb = (steiner_proxy + flow) / Rat(2);

    double lg = std::log2(static_cast<double>(m.n + 2));
    double len_gate = static_cast<double>(cfg.c1) * lg * lg * rat_double(lb);
    double delay_gate = static_cast<double>(cfg.c2) * lg * rat_double(pair_sum);

    SingleTour best;
    bool have_best = false;
    for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
        HstTree hst = frt_embed(m, seed + static_cast<std::uint64_t>(attempt));
        auto pre = preorder_index(hst);

        // group live demands by the LCA node of their endpoints
        std::map<int, std::vector<int>> groups;
        for (int i : live_ids)
            groups[hst.lca(hst.leaf_of[demands[i].s], hst.leaf_of[demands[i].t])].push_back(i);

        // serve deepest levels last; inside a level follow preorder
        std::vector<int> order;
        for (const auto& [node, lst] : groups) order.push_back(node);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (hst.nodes[a].level != hst.nodes[b].level)
                return hst.nodes[a].level > hst.nodes[b].level;
            return pre[a] < pre[b];
        });

        TourBuilder builder(m, root);
        serve_zero_demands(builder, demands, zero_ids);
        for (int node : order) {
            int rep = hst.nodes[node].center;
            std::vector<CvrpItem> src, dst;
            for (int i : groups[node]) {
                src.push_back({i, demands[i].s, demands[i].w});
                dst.push_back({i, demands[i].t, demands[i].w});
            }
            builder.splice(cvrp_collect(m, rep, src, k, Rat(2)));
            builder.splice(cvrp_bounded_delay(m, rep, dst, k, Rat(2)));
        }
        SingleTour tour = builder.finish();

        bool ok_len = rat_double(tour.length) <= len_gate || tour.length == Rat(0);
        bool ok_delay = rat_double(tour.delay_sum()) <= delay_gate ||
                        tour.delay_sum() == Rat(0);
        if (ok_len && ok_delay) return tour;
        if (!have_best || tour.length < best.length) {
            best = std::move(tour);
            have_best = true;
        }
    }
    throw TourBoundError(std::move(best));
}

SingleTour preemptive_tour_minor_free(const WeightedGraph& g,
                                      const std::vector<Demand>& demands, long long k,
                                      int r, const SolveConfig& cfg) {
    Metric m = metric_from_graph(g);
    if (demands.empty()) {
        TourBuilder builder(m, 0);
        return builder.finish();
    }
    int root = lowest_endpoint(demands);
    std::vector<int> zero_ids;
    std::map<int, std::vector<int>> scale_groups;  // j -> demand ids
    for (int i = 0; i < static_cast<int>(demands.size()); ++i) {
        const auto& dm = demands[i];
        if (dm.s == dm.t) {
            zero_ids.push_back(i);
            continue;
        }
        int j = 0;
        while (pow2(j) < m.at(dm.s, dm.t)) ++j;
        scale_groups[j].push_back(i);
    }

    TourBuilder builder(m, root);
    serve_zero_demands(builder, demands, zero_ids);
    for (const auto& [j, ids] : scale_groups) {
        long long gamma = 1LL << j;
        ClusterCover cover = split_cover(g, gamma, r, CoverMode::Separated);

        // demand -> cluster minimizing its best possible via-center detour
        std::map<int, std::vector<int>> by_cluster;
        for (int i : ids) {
            const auto& dm = demands[i];
            int best_c = -1;
            Rat best_score(0);
            for (int c = 0; c < static_cast<int>(cover.clusters.size()); ++c) {
                const auto& cl = cover.clusters[c];
                if (!std::binary_search(cl.begin(), cl.end(), dm.s) ||
                    !std::binary_search(cl.begin(), cl.end(), dm.t))
                    continue;
                Rat score = m.at(dm.s, cl[0]) + m.at(cl[0], dm.t);
                for (int v : cl) score = std::min(score, m.at(dm.s, v) + m.at(v, dm.t));
                if (best_c < 0 || score < best_score) {
                    best_c = c;
                    best_score = score;
                }
            }
            if (best_c < 0)
                throw std::logic_error("preemptive_tour_minor_free: demand not co-clustered");
            by_cluster[best_c].push_back(i);
        }

        std::map<int, std::vector<int>> by_color;  // color -> clusters
        for (const auto& [c, lst] : by_cluster)
            by_color[cover.colors.empty() ? 0 : cover.colors[c]].push_back(c);

        for (const auto& [color, clusters] : by_color) {
            // center of each non-trivial cluster: minimize the worst detour
            std::map<int, int> center;
            std::vector<int> centers;
            for (int c : clusters) {
                const auto& cl = cover.clusters[c];
                int best_v = cl[0];
                Rat best_score(-1);
                for (int v : cl) {
                    Rat score(0);
                    for (int i : by_cluster[c])
                        score = std::max(score, m.at(demands[i].s, v) + m.at(v, demands[i].t));
                    if (best_score < Rat(0) || score < best_score) {
                        best_score = score;
                        best_v = v;
                    }
                }
                center[c] = best_v;
                centers.push_back(best_v);
            }
            Tour ct = tsp_tour(m, centers);
            // serve clusters in center-tour order
            std::vector<int> cluster_order;
            for (int v : ct.order)
                for (int c : clusters)
                    if (center[c] == v &&
                        std::find(cluster_order.begin(), cluster_order.end(), c) ==
                            cluster_order.end())
                        cluster_order.push_back(c);
            for (int c : cluster_order) {
                std::vector<CvrpItem> src, dst;
                for (int i : by_cluster[c]) {
                    src.push_back({i, demands[i].s, demands[i].w});
                    dst.push_back({i, demands[i].t, demands[i].w});
                }
                builder.splice(cvrp_collect(m, center[c], src, k, Rat(2)));
                builder.splice(cvrp_bounded_delay(m, center[c], dst, k, Rat(2)));
            }
        }
    }
    SingleTour tour = builder.finish();
    for (const auto& [i, d] : tour.delay)
        if (d > Rat(cfg.c3) * m.at(demands[i].s, demands[i].t))
            throw std::logic_error("preemptive_tour_minor_free: delay bound violated");
    return tour;
}

SingleTour stacker_crane(const Metric& m, const std::vector<Demand>& demands, int depot) {
    TourBuilder builder(m, depot);
    if (demands.empty()) return builder.finish();

    std::vector<int> verts{depot};
    for (const auto& dm : demands) {
        verts.push_back(dm.s);
        verts.push_back(dm.t);
    }
    Tour C = tsp_tour(m, verts);

    Rat pair_sum(0);
    for (const auto& dm : demands) pair_sum += m.at(dm.s, dm.t);

    std::vector<char> served(demands.size(), 0);
    for (int v : C.order) {
        for (int i = 0; i < static_cast<int>(demands.size()); ++i) {
            if (served[i] || demands[i].s != v) continue;
            served[i] = 1;
            builder.move(v);
            builder.pick(i);
            if (demands[i].t != v) builder.move(demands[i].t);
            builder.drop(i);
            builder.add_delay(i, m.at(demands[i].s, demands[i].t));
        }
    }
    SingleTour tour = builder.finish();
    if (tour.length > C.length + Rat(2) * pair_sum)
        throw std::logic_error("stacker_crane: length bound violated");
    return tour;
}

}  // namespace daride
