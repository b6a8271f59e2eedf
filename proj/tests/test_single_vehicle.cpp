#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>

#include "daride/hst.hpp"
#include "daride/single_vehicle.hpp"
#include "daride/validate.hpp"
#include "test_util.hpp"

using namespace daride;
using namespace testutil;

namespace {

// test-only Held-Karp: exact closed TSP through pts (pts[0] = root)
Rat held_karp(const Metric& m, const std::vector<int>& pts) {
    int n = static_cast<int>(pts.size());
    if (n <= 1) return Rat(0);
    Rat inf(1000000000LL);
    std::vector<std::vector<Rat>> dp(1 << (n - 1), std::vector<Rat>(n - 1, inf));
    for (int v = 0; v < n - 1; ++v) dp[1 << v][v] = m.at(pts[0], pts[v + 1]);
    for (int mask = 1; mask < (1 << (n - 1)); ++mask)
        for (int v = 0; v < n - 1; ++v) {
            if (!(mask & (1 << v)) || dp[mask][v] == inf) continue;
            for (int u = 0; u < n - 1; ++u) {
                if (mask & (1 << u)) continue;
                Rat c = dp[mask][v] + m.at(pts[v + 1], pts[u + 1]);
                if (c < dp[mask | (1 << u)][u]) dp[mask | (1 << u)][u] = c;
            }
        }
    Rat best = inf;
    int full = (1 << (n - 1)) - 1;
    for (int v = 0; v < n - 1; ++v)
        best = std::min(best, dp[full][v] + m.at(pts[v + 1], pts[0]));
    return best;
}

// test-only exact CVRP: best trip partition, each trip an exact tour
Rat cvrp_opt(const Metric& m, int depot, const std::vector<int>& dests, long long k) {
    int n = static_cast<int>(dests.size());
    std::vector<Rat> trip(1 << n, Rat(0));
    for (int mask = 1; mask < (1 << n); ++mask) {
        std::vector<int> pts{depot};
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) pts.push_back(dests[i]);
        trip[mask] = held_karp(m, pts);
    }
    Rat inf(1000000000LL);
    std::vector<Rat> f(1 << n, inf);
    f[0] = Rat(0);
    for (int mask = 1; mask < (1 << n); ++mask)
        for (int sub = mask; sub > 0; sub = (sub - 1) & mask) {
            if (__builtin_popcount(static_cast<unsigned>(sub)) > k) continue;
            if (f[mask ^ sub] == inf) continue;
            f[mask] = std::min(f[mask], f[mask ^ sub] + trip[sub]);
        }
    return f[(1 << n) - 1];
}

// wraps a tour plus the demands it serves into an instance and validates
ValidationReport validate_tour(const Metric& m, const SingleTour& tour,
                               const std::vector<Demand>& demands, long long k) {
    Instance inst;
    inst.metric = m;
    inst.demands = demands;
    inst.depots = {tour.root};
    inst.capacity = k;
    return validate(inst, tour.to_schedule());
}

}  // namespace

TEST_CASE("tsp_tour basics") {
    Metric m2(2);
    m2.at(0, 1) = m2.at(1, 0) = Rat(7);
    auto t1 = tsp_tour(m2, {0});
    CHECK(t1.length == Rat(0));
    auto t2 = tsp_tour(m2, {0, 1});
    CHECK(t2.length == Rat(14));
}

TEST_CASE("tsp_tour vs MST doubling and Held-Karp") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        auto m = random_metric(seed, 8);
        std::vector<int> pts{0, 1, 2, 3, 4, 5, 6, 7};
        auto tour = tsp_tour(m, pts);
        auto [edges, mst_len] = mst_edges(m, pts);
        CHECK(tour.length <= Rat(2) * mst_len);
        CHECK(tour.length >= held_karp(m, pts));
    }
}

TEST_CASE("select_checkpoints") {
    auto m = metric_from_graph(path_graph(6));
    // short tour: total length within beta * min distance -> no checkpoints
    auto small = tsp_tour(m, {0, 1});
    auto cs0 = select_checkpoints(m, small, Rat(5));
    CHECK(cs0.cps.empty());

    // root plus collinear points, beta = 2: both properties hold (asserted
    // inside; re-verify property 2 here)
    auto tour = tsp_tour(m, {0, 1, 2, 3, 4, 5});
    auto cs = select_checkpoints(m, tour, Rat(2));
    Rat sum(0);
    for (int cp : cs.cps) sum += m.at(tour.order[0], tour.order[cp]);
    CHECK(sum <= tour.length / (Rat(2) - Rat(1)));

    for (std::uint64_t seed = 3; seed <= 8; ++seed) {
        auto rm = random_metric(seed, 9);
        std::vector<int> pts{0, 1, 2, 3, 4, 5, 6, 7, 8};
        auto rt = tsp_tour(rm, pts);
        for (Rat beta : {Rat(3, 2), Rat(2), Rat(4)}) {
            auto rcs = select_checkpoints(rm, rt, beta);
            Rat rsum(0);
            for (int cp : rcs.cps) rsum += rm.at(rt.order[0], rt.order[cp]);
            CHECK(rsum * (beta - Rat(1)) <= rt.length);
        }
    }
}

TEST_CASE("cvrp_bounded_delay single object") {
    auto m = metric_from_graph(path_graph(10));
    auto tour = cvrp_bounded_delay(m, 0, {{0, 9, 1}}, 1, Rat(2));
    CHECK(tour.length == Rat(18));
    CHECK(tour.delay.at(0) == Rat(9));
    auto rep = validate_tour(m, tour, {{0, 9, 1}}, 1);
    CHECK(rep.feasible);
    CHECK(rep.makespan == Rat(18));
}

TEST_CASE("cvrp_bounded_delay with slack capacity is one trip") {
    auto m = random_metric(4, 7);
    std::vector<CvrpItem> items;
    std::vector<int> verts{0};
    for (int v = 1; v < 7; ++v) {
        items.push_back({v - 1, v, 1});
        verts.push_back(v);
    }
    auto tour = cvrp_bounded_delay(m, 0, items, 100, Rat(1000));
    auto C = tsp_tour(m, verts);
    CHECK(tour.length == C.length);
}

TEST_CASE("cvrp_bounded_delay vs exact optimum") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto m = random_metric(seed + 40, 8);
        Rng rng(seed, 5);
        std::vector<CvrpItem> items;
        std::vector<int> dests;
        std::vector<Demand> demands;
        for (int i = 0; i < 6; ++i) {
            int v = static_cast<int>(rng.below(7)) + 1;
            items.push_back({i, v, 1});
            dests.push_back(v);
            demands.push_back({0, v, 1});
        }
        for (long long k : {1LL, 2LL, 3LL}) {
            for (Rat beta : {Rat(3, 2), Rat(2), Rat(4)}) {
                auto tour = cvrp_bounded_delay(m, 0, items, k, beta);
                for (const auto& it : items)
                    CHECK(tour.delay.at(it.id) <= beta * m.at(0, it.vertex));
                Rat opt = cvrp_opt(m, 0, dests, k);
                CHECK(tour.length >= opt);
                CHECK(tour.length <= (Rat(3) + Rat(4) / (beta - Rat(1))) * opt);
                CHECK(validate_tour(m, tour, demands, k).feasible);
            }
        }
    }
}

TEST_CASE("cvrp_collect mirrors the delivery tour") {
    auto m = metric_from_graph(path_graph(5));
    auto c1 = cvrp_collect(m, 0, {{0, 4, 1}}, 1, Rat(2));
    CHECK(c1.length == Rat(8));
    CHECK(c1.delay.at(0) <= Rat(8));

    Rng rng(9, 1);
    std::vector<CvrpItem> items;
    std::vector<Demand> demands;
    auto rm = random_metric(15, 7);
    for (int i = 0; i < 5; ++i) {
        int v = static_cast<int>(rng.below(7));
        items.push_back({i, v, 1});
        demands.push_back({v, 3, 1});
    }
    auto col = cvrp_collect(rm, 3, items, 2, Rat(2));
    auto fwd = cvrp_bounded_delay(rm, 3, items, 2, Rat(2));
    CHECK(col.length == fwd.length);
    auto rep = validate_tour(rm, col, demands, 2);
    CHECK(rep.feasible);
    for (const auto& it : items) CHECK(col.delay.at(it.id) <= Rat(2) * rm.at(it.vertex, 3));
}

TEST_CASE("cvrp weighted items keep capacity and delay") {
    auto m = random_metric(77, 6);
    std::vector<CvrpItem> items{{0, 1, 2}, {1, 2, 3}, {2, 3, 1}, {3, 4, 2}, {4, 5, 2}};
    std::vector<Demand> demands;
    for (const auto& it : items) demands.push_back({0, it.vertex, it.weight});
    auto tour = cvrp_bounded_delay(m, 0, items, 4, Rat(2));
    for (const auto& it : items) CHECK(tour.delay.at(it.id) <= Rat(2) * m.at(0, it.vertex));
    auto rep = validate_tour(m, tour, demands, 4);
    CHECK(rep.feasible);
    CHECK(rep.vehicles[0].max_load <= 4);
}

TEST_CASE("preemptive_tour basics") {
    SolveConfig cfg;
    auto m = metric_from_graph(path_graph(6));

    auto single = preemptive_tour(m, {{0, 5, 1}}, 1, 3, cfg);
    auto rep = validate_tour(m, single, {{0, 5, 1}}, 1);
    CHECK(rep.feasible);
    CHECK(rep.objects[0].preemptions <= 1);

    // all demands on one vertex: nothing to haul
    std::vector<Demand> zero{{2, 2, 1}, {2, 2, 1}};
    auto zt = preemptive_tour(m, zero, 1, 3, cfg);
    auto zrep = validate_tour(m, zt, zero, 1);
    CHECK(zrep.feasible);
    CHECK(zt.delay_sum() == Rat(0));
}

TEST_CASE("preemptive_tour on random instances") {
    SolveConfig cfg;
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        auto m = random_metric(seed + 60, 12);
        Rng rng(seed, 13);
        std::vector<Demand> demands;
        for (int i = 0; i < 10; ++i)
            demands.push_back({static_cast<int>(rng.below(12)),
                               static_cast<int>(rng.below(12)), 1});
        auto tour = preemptive_tour(m, demands, 2, seed, cfg);
        auto rep = validate_tour(m, tour, demands, 2);
        CHECK(rep.feasible);
        for (const auto& o : rep.objects) CHECK(o.preemptions <= 1);

        // configured gates hold for the returned tour
        double lg = std::log2(14.0);
        std::vector<int> eps;
        Rat flow(0), psum(0);
        for (const auto& dm : demands) {
            eps.push_back(dm.s);
            eps.push_back(dm.t);
            flow += m.at(dm.s, dm.t);
            psum += m.at(dm.s, dm.t);
        }
        std::sort(eps.begin(), eps.end());
        eps.erase(std::unique(eps.begin(), eps.end()), eps.end());
        Rat lb = (tsp_tour(m, eps).length / Rat(2) + flow / Rat(2)) / Rat(2);
        CHECK(rat_double(tour.length) <= cfg.c1 * lg * lg * rat_double(lb) + 1e-9);
        CHECK(rat_double(tour.delay_sum()) <= cfg.c2 * lg * rat_double(psum) + 1e-9);
    }
}

TEST_CASE("preemptive_tour preempts at the level representative") {
    SolveConfig cfg;
    cfg.max_retries = 0;  // force the first embedding so the groups are reproducible
    auto m = random_metric(123, 10);
    Rng rng(3, 17);
    std::vector<Demand> demands;
    for (int i = 0; i < 6; ++i)
        demands.push_back({static_cast<int>(rng.below(10)),
                           static_cast<int>(rng.below(10)), 1});
    SingleTour tour;
    try {
        tour = preemptive_tour(m, demands, 2, 7, cfg);
    } catch (const TourBoundError&) {
        return;  // first sample missed the gates; rep equality is checked elsewhere
    }
    auto hst = frt_embed(m, 7);
    auto rep = validate_tour(m, tour, demands, 2);
    REQUIRE(rep.feasible);
    for (int i = 0; i < static_cast<int>(demands.size()); ++i) {
        if (rep.objects[i].preemptions == 0) continue;
        REQUIRE(rep.objects[i].preemptions == 1);
        int lca = hst.lca(hst.leaf_of[demands[i].s], hst.leaf_of[demands[i].t]);
        CHECK(rep.objects[i].preempt_vertices[0] == hst.nodes[lca].center);
    }
}

TEST_CASE("preemptive_tour reports the best tour when retries run out") {
    SolveConfig cfg;
    cfg.max_retries = 1;
    cfg.c1 = 0;  // unreachable gate
    cfg.c2 = 0;
    auto m = random_metric(5, 8);
    std::vector<Demand> demands{{0, 7, 1}, {3, 5, 1}};
    CHECK_THROWS_AS(preemptive_tour(m, demands, 1, 1, cfg), TourBoundError);
    try {
        preemptive_tour(m, demands, 1, 1, cfg);
    } catch (const TourBoundError& e) {
        CHECK(!e.best.stops.empty());
        CHECK(validate_tour(m, e.best, demands, 1).feasible);
    }
}

TEST_CASE("preemptive_tour_minor_free on grids") {
    SolveConfig cfg;
    auto g = grid_graph(8, 8);
    auto m = metric_from_graph(g);
    Rng rng(31, 2);
    std::vector<Demand> demands;
    for (int i = 0; i < 12; ++i)
        demands.push_back({static_cast<int>(rng.below(64)),
                           static_cast<int>(rng.below(64)), 1});
    auto tour = preemptive_tour_minor_free(g, demands, 2, 5, cfg);
    auto rep = validate_tour(m, tour, demands, 2);
    CHECK(rep.feasible);
    Rat dsum(0);
    for (const auto& dm : demands) dsum += m.at(dm.s, dm.t);
    CHECK(tour.delay_sum() <= Rat(cfg.c3) * dsum);
    for (int i = 0; i < 12; ++i) {
        CHECK(rep.objects[i].preemptions <= 1);
        if (tour.delay.count(i))
            CHECK(tour.delay.at(i) <= Rat(cfg.c3) * m.at(demands[i].s, demands[i].t));
    }
}

TEST_CASE("preemptive_tour_minor_free demands at one scale or several") {
    SolveConfig cfg;
    auto g = grid_graph(5, 5);
    auto m = metric_from_graph(g);
    // one cluster, one scale
    std::vector<Demand> close{{0, 1, 1}, {1, 2, 1}};
    auto t1 = preemptive_tour_minor_free(g, close, 1, 3, cfg);
    CHECK(validate_tour(m, t1, close, 1).feasible);
    // two scales
    std::vector<Demand> spread{{0, 1, 1}, {0, 24, 1}};
    auto t2 = preemptive_tour_minor_free(g, spread, 1, 3, cfg);
    CHECK(validate_tour(m, t2, spread, 1).feasible);
}

TEST_CASE("stacker_crane") {
    auto m = metric_from_graph(path_graph(6));
    // collinear: depot 0, source 2, destination 4
    auto one = stacker_crane(m, {{2, 4, 1}}, 0);
    CHECK(one.length == Rat(2 + 2 + 4));
    CHECK(validate_tour(m, one, {{2, 4, 1}}, 1).feasible);

    // s == t demands reduce to a visiting tour
    std::vector<Demand> visits{{1, 1, 1}, {4, 4, 1}};
    auto vis = stacker_crane(m, visits, 0);
    auto rep = validate_tour(m, vis, visits, 1);
    CHECK(rep.feasible);
    CHECK(vis.length == Rat(8));  // 0 -> 1 -> 4 -> 0

    // never carries two objects at once
    for (std::uint64_t seed = 2; seed <= 6; ++seed) {
        auto rm = random_metric(seed + 90, 6);
        Rng rng(seed, 3);
        std::vector<Demand> demands;
        for (int i = 0; i < 4; ++i)
            demands.push_back({static_cast<int>(rng.below(6)),
                               static_cast<int>(rng.below(6)), 1});
        auto tour = stacker_crane(rm, demands, 0);
        auto r = validate_tour(rm, tour, demands, 1);
        CHECK(r.feasible);
        CHECK(r.vehicles[0].max_load <= 1);
    }
}

TEST_CASE("stacker_crane is within the enumeration optimum's reach") {
    // 4 demands on 6 points: optimum over all service orders (k = 1, each
    // demand served source-to-destination in one shot)
    auto m = random_metric(444, 6);
    std::vector<Demand> demands{{1, 3, 1}, {2, 5, 1}, {4, 0, 1}, {5, 1, 1}};
    auto tour = stacker_crane(m, demands, 0);
    std::vector<int> idx{0, 1, 2, 3};
    Rat best(1000000000LL);
    std::sort(idx.begin(), idx.end());
    do {
        Rat len(0);
        int cur = 0;
        for (int i : idx) {
            len += m.at(cur, demands[i].s) + m.at(demands[i].s, demands[i].t);
            cur = demands[i].t;
        }
        len += m.at(cur, 0);
        best = std::min(best, len);
    } while (std::next_permutation(idx.begin(), idx.end()));
    CHECK(tour.length >= best);
    Rat tsp_len = tsp_tour(m, {0, 1, 3, 2, 5, 4}).length;
    Rat pair_sum(0);
    for (const auto& dm : demands) pair_sum += m.at(dm.s, dm.t);
    CHECK(tour.length <= tsp_len + Rat(2) * pair_sum);
}
