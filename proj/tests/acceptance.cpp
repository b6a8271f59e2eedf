// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Tolerances are pinned here, not configured elsewhere.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

#include "daride/bench.hpp"
#include "daride/cover.hpp"
#include "daride/errors.hpp"
#include "daride/gen.hpp"
#include "daride/lower_bounds.hpp"
#include "daride/multi_vehicle.hpp"
#include "daride/oracle.hpp"
#include "daride/rng.hpp"
#include "daride/single_vehicle.hpp"
#include "daride/spanner.hpp"
#include "daride/validate.hpp"

using namespace daride;

namespace {

int failures = 0;

struct Criterion {
    std::string name;
    double budget_s;

    void run(const std::function<std::string()>& body) const {
        auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = true;
        try {
            detail = body();
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (budget_s > 0 && secs > budget_s) {
            ok = false;
            detail += " [over budget " + std::to_string(budget_s) + "s]";
        }
        std::ostringstream line;
        line << (ok ? "PASS " : "FAIL ") << name << " (" << detail << ", "
             << static_cast<int>(secs * 1000) << " ms)";
        std::cout << line.str() << "\n";
        if (!ok) ++failures;
    }
};

#define REQUIRE_OR_THROW(cond, msg)                     \
    do {                                                \
        if (!(cond)) throw std::runtime_error(msg);     \
    } while (0)

Instance tiny_instance(std::uint64_t seed) {
    GenSpec s;
    s.kind = GenKind::RandomMetric;
    s.n = 6;
    s.m = 3;
    s.q = 2;
    s.k = 2;
    s.max_len = 9;
    s.seed = seed;
    return gen(s);
}

// shared between criteria 5, 6 and 10
struct TinyRun {
    Instance inst;
    Rat optimum{0};
    LowerBoundSet lbs;
};
std::vector<TinyRun> tiny_runs;

}  // namespace

int main() {
    SolveConfig cfg;
    std::cout << "acceptance suite\n";

    Criterion{"criterion-1 star makespan 4", 1.0}.run([&] {
        for (int q : {3, 8, 16}) {
            GenSpec s;
            s.kind = GenKind::StarGap;
            s.q = q;
            Instance inst = gen(s);
            auto [sched, trace] = uncap_solve(inst, cfg);
            auto rep = validate(inst, sched);
            REQUIRE_OR_THROW(rep.feasible, "star schedule infeasible");
            REQUIRE_OR_THROW(rep.makespan == Rat(4),
                             "star makespan " + rat_str(rep.makespan) + " != 4");
        }
        return std::string("q in {3,8,16}, makespan exactly 4");
    });

    Criterion{"criterion-2 depot-demand spanner rounds", 5.0}.run([&] {
        std::vector<std::pair<std::string, Instance>> cases;
        GenSpec gg;
        gg.kind = GenKind::GirthGap;
        gg.cage = "petersen";
        cases.push_back({"petersen", gen(gg)});
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            Rng rng(seed, 1234);
            int t = 3 + static_cast<int>(rng.below(62));  // up to 64 depots
            WeightedGraph g;
            g.n = t;
            for (int v = 1; v < t; ++v)
                g.edges.push_back({static_cast<int>(rng.below(v)), v, 1});
            for (int e = 0; e < t; ++e) {
                int u = static_cast<int>(rng.below(t)), v = static_cast<int>(rng.below(t));
                if (u != v) g.edges.push_back({std::min(u, v), std::max(u, v), 1});
            }
            Instance inst;
            inst.metric = metric_from_graph(g);
            inst.graph = g;
            for (int v = 0; v < t; ++v) inst.depots.push_back(v);
            std::set<std::pair<int, int>> seen;
            for (const auto& e : g.edges)
                if (seen.insert({std::min(e.u, e.v), std::max(e.u, e.v)}).second) {
                    inst.demands.push_back({e.u, e.v, 1});
                    inst.demands.push_back({e.v, e.u, 1});
                }
            inst.capacity = static_cast<long long>(inst.demands.size());
            cases.push_back({"rand" + std::to_string(seed), inst});
        }
        for (auto& [id, inst] : cases) {
            int t = static_cast<int>(inst.distinct_depots().size());
            int alpha = ceil_log2(t) + 1;
            Schedule sched = depot_demand_schedule(inst);
            REQUIRE_OR_THROW(sched.num_rounds() == 2 * alpha, id + ": round count");
            auto rep = validate(inst, sched);
            REQUIRE_OR_THROW(rep.feasible, id + ": infeasible");
            // spanner invariants, exhaustively (stretch, girth, assignment)
            std::set<std::pair<int, int>> eset;
            for (const auto& dm : inst.demands)
                if (dm.s != dm.t)
                    eset.insert({std::min(dm.s, dm.t), std::max(dm.s, dm.t)});
            std::vector<std::pair<int, int>> edges(eset.begin(), eset.end());
            std::map<int, int> idx;
            auto rd = inst.distinct_depots();
            for (int i = 0; i < static_cast<int>(rd.size()); ++i) idx[rd[i]] = i;
            for (auto& e : edges) e = {idx[e.first], idx[e.second]};
            Spanner sp = sparse_spanner(t, edges, alpha);
            sp.check(edges);  // throws on stretch/girth/assignment violation
            for (const auto& a : sp.assigned)
                REQUIRE_OR_THROW(a.size() <= 2, id + ": vehicle with > 2 edges");
        }
        return std::string("petersen + 20 random graphs, 2*alpha rounds, spanner checked");
    });

    Criterion{"criterion-3 cvrp bounded delay", 30.0}.run([&] {
        long long ks[3] = {1, 2, 3};
        Rat betas[3] = {Rat(3, 2), Rat(2), Rat(4)};
        int oracle_checked = 0;
        for (int case_no = 0; case_no < 100; ++case_no) {
            Rng rng(static_cast<std::uint64_t>(case_no) + 9000, 77);
            int n = 5 + static_cast<int>(rng.below(8));  // <= 12
            GenSpec ms;
            ms.kind = GenKind::RandomMetric;
            ms.n = n;
            ms.m = 0;
            ms.q = 1;
            ms.k = 1;
            ms.seed = 4000 + case_no;
            Metric m = gen(ms).metric;
            long long k = ks[case_no % 3];
            Rat beta = betas[(case_no / 3) % 3];
            int depot = static_cast<int>(rng.below(n));
            int mcount = 3 + static_cast<int>(rng.below(8));  // <= 10 destinations
            std::vector<CvrpItem> items;
            std::vector<int> dests;
            for (int i = 0; i < mcount; ++i) {
                int v = static_cast<int>(rng.below(n));
                items.push_back({i, v, 1});
                dests.push_back(v);
            }
            // construction throws if a delay, chain or checkpoint property fails
            SingleTour tour = cvrp_bounded_delay(m, depot, items, k, beta);
            for (const auto& it : items)
                REQUIRE_OR_THROW(tour.delay.at(it.id) <= beta * m.at(depot, it.vertex),
                                 "delay bound violated");
            // independent chain recomputation
            std::vector<int> verts{depot};
            for (const auto& it : items) verts.push_back(it.vertex);
            Tour C = tsp_tour(m, verts);
            Rat flow(0);
            for (const auto& it : items) flow += m.at(depot, it.vertex);
            REQUIRE_OR_THROW(
                tour.length <=
                    (Rat(1) + Rat(2) / (beta - Rat(1))) * C.length + Rat(2) * flow / Rat(k),
                "length chain violated");
            // checkpoint property 2 recomputed
            auto cps = select_checkpoints(m, C, beta);
            Rat cp_sum(0);
            for (int cp : cps.cps) cp_sum += m.at(C.order[0], C.order[cp]);
            REQUIRE_OR_THROW(cp_sum * (beta - Rat(1)) <= C.length, "property 2 violated");
            // oracle ratio on the small subset
            Rat opt = oracle_cvrp(m, depot, dests, k);
            REQUIRE_OR_THROW(tour.length >= opt, "below the optimum");
            REQUIRE_OR_THROW(tour.length <= (Rat(3) + Rat(4) / (beta - Rat(1))) * opt,
                             "ratio above 3 + 4/(beta-1)");
            ++oracle_checked;
        }
        return "100 instances, " + std::to_string(oracle_checked) + " oracle comparisons";
    });

    Criterion{"criterion-4 single-vehicle preemptive tour", 60.0}.run([&] {
        std::vector<double> len_ratio, delay_ratio;
        for (int case_no = 0; case_no < 50; ++case_no) {
            Rng rng(static_cast<std::uint64_t>(case_no) + 100, 5);
            int n = 6 + static_cast<int>(rng.below(11));  // <= 16
            GenSpec ms;
            ms.kind = GenKind::RandomMetric;
            ms.n = n;
            ms.m = 0;
            ms.q = 1;
            ms.k = 1;
            ms.seed = 8800 + case_no;
            Metric m = gen(ms).metric;
            long long k = 1 + static_cast<long long>(rng.below(3));
            int mc = 4 + static_cast<int>(rng.below(9));  // <= 12
            std::vector<Demand> demands;
            for (int i = 0; i < mc; ++i)
                demands.push_back({static_cast<int>(rng.below(n)),
                                   static_cast<int>(rng.below(n)), 1});
            SingleTour tour = preemptive_tour(m, demands, k, 777 + case_no, cfg);

            Instance wrap;
            wrap.metric = m;
            wrap.demands = demands;
            wrap.depots = {tour.root};
            wrap.capacity = k;
            auto rep = validate(wrap, tour.to_schedule());
            REQUIRE_OR_THROW(rep.feasible, "tour infeasible");
            for (const auto& o : rep.objects)
                REQUIRE_OR_THROW(o.preemptions <= 1, "more than one preemption");

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
            Rat lb = (tsp_tour(m, eps).length / Rat(2) + flow / Rat(k)) / Rat(2);
            double lg = std::log2(static_cast<double>(n + 2));
            REQUIRE_OR_THROW(
                rat_double(tour.length) <= cfg.c1 * lg * lg * rat_double(lb) + 1e-9,
                "length gate violated");
            REQUIRE_OR_THROW(
                rat_double(tour.delay_sum()) <= cfg.c2 * lg * rat_double(psum) + 1e-9,
                "delay gate violated");
            if (lb > Rat(0)) len_ratio.push_back(rat_double(tour.length / lb));
            if (psum > Rat(0))
                delay_ratio.push_back(rat_double(tour.delay_sum() / psum));
        }
        auto median = [](std::vector<double> v) {
            std::sort(v.begin(), v.end());
            return v.empty() ? 0.0 : v[v.size() / 2];
        };
        std::ostringstream os;
        os << "50 instances, median d(tau)/LB=" << median(len_ratio)
           << ", median delay/sumd=" << median(delay_ratio);
        return os.str();
    });

    // shared tiny suite with oracle optima; every witness must validate
    for (std::uint64_t seed = 1; tiny_runs.size() < 30; ++seed) {
        TinyRun run;
        run.inst = tiny_instance(seed + 500);
        bool nontrivial = false;
        for (const auto& dm : run.inst.demands)
            if (dm.s != dm.t) nontrivial = true;
        if (!nontrivial) continue;
        run.lbs = lb_max(run.inst);
        auto oracle = oracle_makespan(run.inst);
        run.optimum = oracle.optimum;
        auto wrep = validate(run.inst, oracle.witness);
        if (!wrep.feasible || wrep.makespan < run.optimum) {
            std::cout << "FAIL oracle witness invalid on tiny suite\n";
            return 1;
        }
        tiny_runs.push_back(std::move(run));
    }

    Criterion{"criterion-5 partial coverage at the oracle bound", 60.0}.run([&] {
        int calls_checked = 0;
        for (const auto& run : tiny_runs) {
            const Instance& inst = run.inst;
            Rat rho = Rat(cfg.c_rho) * Rat(ceil_log2(inst.n() + 2)) *
                      Rat(ceil_log2(inst.m() + 2));
            std::vector<int> all{};
            for (int j = 0; j < inst.q(); ++j) all.push_back(j);
            std::vector<int> ids;
            for (int i = 0; i < inst.m(); ++i) ids.push_back(i);
            SolveTrace trace;
            auto res = partial(inst, all, ids, run.optimum, rho, 0, cfg, &trace);
            REQUIRE_OR_THROW(res.has_value(), "partial signalled at the optimum bound");
            for (const auto& call : trace.calls) {
                REQUIRE_OR_THROW(call.covered >= (call.d_size + 3) / 4,
                                 "call covered less than a quarter");
                ++calls_checked;
            }
            Rat ms = schedule_makespan(inst.metric, res->schedule, inst.depots);
            REQUIRE_OR_THROW(ms <= (Rat(16) + Rat(16) * rho) * run.optimum,
                             "makespan above (16+16rho)B");
        }
        return "30 instances, " + std::to_string(calls_checked) + " partial calls";
    });

    Criterion{"criterion-6 cap_solve end to end", 120.0}.run([&] {
        std::vector<double> ratios;
        for (const auto& run : tiny_runs) {
            auto [sched, trace] = cap_solve(run.inst, cfg);
            auto rep = validate(run.inst, sched);
            REQUIRE_OR_THROW(rep.feasible, "cap_solve schedule infeasible");
            for (const auto& o : rep.objects)
                REQUIRE_OR_THROW(o.preemptions <= 1, "more than one preemption");
            REQUIRE_OR_THROW(rep.makespan >= trace.lbs.combined, "below the lower bound");
            REQUIRE_OR_THROW(run.optimum <= rep.makespan, "oracle exceeds the makespan");
            if (run.optimum > Rat(0))
                ratios.push_back(rat_double(rep.makespan / run.optimum));
        }
        std::sort(ratios.begin(), ratios.end());
        std::ostringstream os;
        os << "30 instances feasible, makespan/optimum median="
           << (ratios.empty() ? 0.0 : ratios[ratios.size() / 2])
           << " max=" << (ratios.empty() ? 0.0 : ratios.back());
        return os.str();
    });

    Criterion{"criterion-7 separated covers", 30.0}.run([&] {
        std::vector<std::pair<std::string, WeightedGraph>> graphs;
        {
            WeightedGraph path;
            path.n = 100;
            for (int i = 0; i + 1 < 100; ++i) path.edges.push_back({i, i + 1, 1});
            graphs.push_back({"path100", path});
            WeightedGraph cyc = path;
            cyc.edges.push_back({99, 0, 1});
            graphs.push_back({"cycle100", cyc});
            WeightedGraph grid;
            grid.n = 100;
            for (int y = 0; y < 10; ++y)
                for (int x = 0; x < 10; ++x) {
                    int v = y * 10 + x;
                    if (x + 1 < 10) grid.edges.push_back({v, v + 1, 1});
                    if (y + 1 < 10) grid.edges.push_back({v, v + 10, 1});
                }
            graphs.push_back({"grid10x10", grid});
        }
        for (const auto& [id, g] : graphs) {
            Metric dm = metric_from_graph(g);
            for (long long gamma : {1LL, 2LL, 4LL}) {
                ClusterCover cov = split_cover(g, gamma, 5, CoverMode::Separated);
                REQUIRE_OR_THROW(cov.num_colors <= 243, id + ": more than 3^5 colors");
                for (int u = 0; u < g.n; ++u)
                    for (int v = u + 1; v < g.n; ++v)
                        if (dm.at(u, v) <= Rat(gamma))
                            REQUIRE_OR_THROW(cov.co_cluster(u, v) >= 0,
                                             id + ": close pair split");
                for (std::size_t a = 0; a < cov.clusters.size(); ++a)
                    for (std::size_t b = a + 1; b < cov.clusters.size(); ++b) {
                        if (cov.colors[a] != cov.colors[b]) continue;
                        for (int u : cov.clusters[a])
                            for (int v : cov.clusters[b])
                                REQUIRE_OR_THROW(dm.at(u, v) >= Rat(gamma),
                                                 id + ": same-color clusters too close");
                    }
                ClusterCover sparse = split_cover(g, gamma, 5, CoverMode::Sparse);
                REQUIRE_OR_THROW(sparse.max_multiplicity <= 32,
                                 id + ": multiplicity above 2^5");
            }
        }
        return std::string("path/cycle/grid x gamma {1,2,4}, r=5, exhaustive");
    });

    Criterion{"criterion-8 minor-free tours", 60.0}.run([&] {
        GenSpec gs;
        gs.kind = GenKind::PlanarGrid;
        gs.grid_w = 8;
        gs.grid_h = 8;
        gs.m = 12;
        gs.q = 1;
        gs.k = 2;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            gs.seed = seed;
            Instance inst = gen(gs);
            SingleTour tour =
                preemptive_tour_minor_free(*inst.graph, inst.demands, inst.capacity, 5, cfg);
            Instance wrap = inst;
            wrap.depots = {tour.root};
            auto rep = validate(wrap, tour.to_schedule());
            REQUIRE_OR_THROW(rep.feasible, "minor-free tour infeasible");
            for (int i = 0; i < inst.m(); ++i) {
                REQUIRE_OR_THROW(rep.objects[i].preemptions <= 1, "preemptions above 1");
                if (tour.delay.count(i))
                    REQUIRE_OR_THROW(
                        tour.delay.at(i) <=
                            Rat(16) * inst.metric.at(inst.demands[i].s, inst.demands[i].t),
                        "delay above 16 d(s,t)");
            }
        }
        // composed uncapacitated algorithm: at most 3 preemptions, at depots
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            GenSpec gi;
            gi.kind = GenKind::PlanarGrid;
            gi.grid_w = 5;
            gi.grid_h = 5;
            gi.m = 8;
            gi.q = 3;
            gi.k = 8;
            gi.seed = seed + 40;
            Instance inst = gen(gi);
            SolveConfig c2 = cfg;
            c2.minor_r = 5;
            auto [sched, trace] = uncap_solve(inst, c2, UncapCore::MinorFree);
            auto rep = validate(inst, sched);
            REQUIRE_OR_THROW(rep.feasible, "composed minor-free infeasible");
            std::set<int> dset(inst.depots.begin(), inst.depots.end());
            for (const auto& o : rep.objects) {
                REQUIRE_OR_THROW(o.preemptions <= 3, "preempted more than thrice");
                for (int v : o.preempt_vertices)
                    REQUIRE_OR_THROW(dset.count(v) == 1, "preemption off the depots");
            }
        }
        return std::string("grids: delay <= 16 d(s,t), <= 1 preemption; composed <= 3");
    });

    Criterion{"criterion-9 weighted pipeline", 60.0}.run([&] {
        // heavy partition properties, recomputed independently
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            Rng rng(seed, 4096);
            Instance inst;
            GenSpec ms;
            ms.kind = GenKind::RandomMetric;
            ms.n = 7;
            ms.m = 0;
            ms.q = 1;
            ms.k = 1;
            ms.seed = 6000 + seed;
            inst.metric = gen(ms).metric;
            inst.capacity = 4;
            inst.depots = {static_cast<int>(rng.below(7)),
                           static_cast<int>(rng.below(7))};
            for (int i = 0; i < 7; ++i)
                inst.demands.push_back({static_cast<int>(rng.below(7)),
                                        static_cast<int>(rng.below(7)),
                                        1 + static_cast<long long>(rng.below(4))});
            const long long k = inst.capacity;

            std::map<std::pair<int, int>, std::vector<long long>> pair_weights;
            for (const auto& dm : inst.demands)
                if (dm.s != dm.t) pair_weights[{dm.s, dm.t}].push_back(dm.w);
            for (auto& [pv, ws] : pair_weights) {
                long long dem = 0;
                for (long long w : ws) dem += w;
                if (2 * dem < k) continue;  // light pair
                std::sort(ws.rbegin(), ws.rend());
                std::vector<long long> parts;
                long long cur = 0;
                for (long long w : ws) {
                    if (cur > 0 && cur + w > k) {
                        parts.push_back(cur);
                        cur = 0;
                    }
                    cur += w;
                }
                parts.push_back(cur);
                for (std::size_t i = 0; i + 1 < parts.size(); ++i)
                    REQUIRE_OR_THROW(2 * parts[i] >= k && parts[i] <= k,
                                     "closed part outside [k/2, k]");
                REQUIRE_OR_THROW(Rat(static_cast<long long>(parts.size())) <=
                                     Rat(4 * dem, k),
                                 "part count above (4/k) dem");
            }

            auto [sched, trace] = weighted_solve(inst, cfg);
            auto rep = validate(inst, sched);
            REQUIRE_OR_THROW(rep.feasible, "weighted schedule infeasible");
            for (int j = 0; j < inst.q(); ++j)
                REQUIRE_OR_THROW(rep.vehicles[j].max_load <= k, "capacity exceeded");
        }
        return std::string("20 weighted instances, parts in [k/2,k], capacity exact");
    });

    Criterion{"criterion-10 lower-bound soundness", 60.0}.run([&] {
        for (const auto& run : tiny_runs) {
            for (Rat v : {run.lbs.flow, run.lbs.nsl, run.lbs.max_pair, run.lbs.max_src,
                          run.lbs.max_dst, run.lbs.combined})
                REQUIRE_OR_THROW(v <= run.optimum, "lower bound exceeds the optimum");
        }
        // nsl heuristic vs oracle on a tiny suite
        Rat worst(0);
        for (std::uint64_t seed = 1; seed <= 15; ++seed) {
            GenSpec ms;
            ms.kind = GenKind::RandomMetric;
            ms.n = 6 + static_cast<int>(seed % 3);
            ms.m = 0;
            ms.q = 1;
            ms.k = 1;
            ms.seed = 7000 + seed;
            Metric m = gen(ms).metric;
            Rng rng(seed, 512);
            std::vector<int> depots{static_cast<int>(rng.below(m.n)),
                                    static_cast<int>(rng.below(m.n))};
            std::vector<int> terms;
            for (int i = 0; i < 4; ++i) terms.push_back(static_cast<int>(rng.below(m.n)));
            auto heur = nsl_solve(m, depots, terms);
            auto opt = nsl_oracle(m, depots, terms);
            if (opt.cost > Rat(0)) {
                Rat ratio = heur.cost / opt.cost;
                REQUIRE_OR_THROW(ratio <= Rat(16), "nsl ratio above 16");
                worst = std::max(worst, ratio);
            } else {
                REQUIRE_OR_THROW(heur.cost == Rat(0), "heuristic misses a zero optimum");
            }
        }
        std::ostringstream os;
        os << "all bounds <= oracle on " << tiny_runs.size()
           << " instances; nsl worst ratio " << rat_double(worst);
        return os.str();
    });

    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: ")
              << (failures == 0 ? "" : std::to_string(failures)) << "\n";
    return failures == 0 ? 0 : 1;
}
