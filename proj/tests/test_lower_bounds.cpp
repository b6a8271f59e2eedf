#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "daride/errors.hpp"
#include "daride/lower_bounds.hpp"
#include "test_util.hpp"

using namespace daride;
using namespace testutil;

namespace {

Instance bare(Metric m, std::vector<int> depots, std::vector<Demand> demands,
              long long k) {
    Instance inst;
    inst.metric = std::move(m);
    inst.depots = std::move(depots);
    inst.demands = std::move(demands);
    inst.capacity = k;
    return inst;
}

// forest structural check: acyclic, connected to the root, covers terminals
void check_forest(const RootedForest& f, const Metric& m, const std::vector<int>& depots,
                  const std::vector<int>& terminals) {
    REQUIRE(f.trees.size() == depots.size());
    for (std::size_t j = 0; j < depots.size(); ++j) {
        std::set<int> verts{depots[j]};
        std::size_t edges = 0;
        for (auto [u, v] : f.trees[j]) {
            verts.insert(u);
            verts.insert(v);
            ++edges;
        }
        CHECK(edges + 1 == verts.size());  // acyclic and connected given coverage below
        // every edge endpoint reachable from the root within the tree
        std::set<int> seen{depots[j]};
        bool grew = true;
        while (grew) {
            grew = false;
            for (auto [u, v] : f.trees[j]) {
                if (seen.count(u) && !seen.count(v)) { seen.insert(v); grew = true; }
                if (seen.count(v) && !seen.count(u)) { seen.insert(u); grew = true; }
            }
        }
        CHECK(seen.size() == verts.size());
    }
    CHECK(f.covers(depots, terminals));
    (void)m;
}

}  // namespace

TEST_CASE("flow_lb") {
    Metric m2(2);
    m2.at(0, 1) = m2.at(1, 0) = Rat(10);
    CHECK(flow_lb(bare(m2, {0}, {}, 1)) == Rat(0));
    CHECK(flow_lb(bare(m2, {0}, {{0, 1, 1}}, 1)) == Rat(10));

    auto m = metric_from_graph(path_graph(4));  // d(0,3)=3
    std::vector<Demand> ds(4, Demand{0, 3, 1});
    CHECK(flow_lb(bare(m, {0, 1}, ds, 3)) == Rat(2));  // 12 / (2*3)
}

TEST_CASE("flow_lb scales linearly in weights, inversely in q*k") {
    auto m = random_metric(11, 6);
    auto base = bare(m, {0, 3}, {{1, 4, 1}, {2, 5, 2}, {0, 2, 3}}, 3);
    Rat f = flow_lb(base);
    auto doubled = base;
    for (auto& dm : doubled.demands) dm.w *= 2;
    CHECK(flow_lb(doubled) == Rat(2) * f);
    auto bigger_fleet = base;
    bigger_fleet.depots = {0, 3, 0, 3};
    CHECK(flow_lb(bigger_fleet) == f / Rat(2));
}

TEST_CASE("trivial_lbs") {
    Metric m1(1);
    auto [p0, s0, d0] = trivial_lbs(bare(m1, {0}, {}, 1));
    CHECK(p0 == Rat(0));
    CHECK(s0 == Rat(0));
    CHECK(d0 == Rat(0));

    auto inst = petersen_instance();
    auto [mp, ms, md] = trivial_lbs(inst);
    CHECK(mp == Rat(1));
    CHECK(ms == Rat(0));
    CHECK(md == Rat(0));
}

TEST_CASE("trivial_lbs equals exhaustive maxima on random instances") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        auto inst = random_instance(seed, 6, 3, 2, 1);
        auto [mp, ms, md] = trivial_lbs(inst);
        Rat emp(0), ems(0), emd(0);
        for (const auto& dm : inst.demands) {
            if (dm.s == dm.t) continue;  // needs no visit, exempt from the bounds
            emp = std::max(emp, inst.metric.at(dm.s, dm.t));
            Rat bs = inst.metric.at(dm.s, inst.depots[0]);
            Rat bd = inst.metric.at(dm.t, inst.depots[0]);
            for (int r : inst.depots) {
                bs = std::min(bs, inst.metric.at(dm.s, r));
                bd = std::min(bd, inst.metric.at(dm.t, r));
            }
            ems = std::max(ems, bs);
            emd = std::max(emd, bd);
        }
        CHECK(mp == emp);
        CHECK(ms == ems);
        CHECK(md == emd);
    }
}

TEST_CASE("nsl_oracle small cases") {
    auto m = metric_from_graph(path_graph(4));
    auto f1 = nsl_oracle(m, {0}, {3});
    CHECK(f1.cost == Rat(3));
    check_forest(f1, m, {0}, {3});

    auto f2 = nsl_oracle(m, {1, 2}, {1, 2});
    CHECK(f2.cost == Rat(0));

    // unit triangle, depot 0, terminals {1,2}: both shapes cost 2
    Metric tri(3);
    for (int u = 0; u < 3; ++u)
        for (int v = 0; v < 3; ++v)
            if (u != v) tri.at(u, v) = Rat(1);
    auto f3 = nsl_oracle(tri, {0}, {1, 2});
    CHECK(f3.cost == Rat(2));
    check_forest(f3, tri, {0}, {1, 2});
}

TEST_CASE("nsl_oracle enforces size limits") {
    auto m = random_metric(5, 14);
    std::vector<int> terms;
    for (int i = 0; i < 9; ++i) terms.push_back(i);
    CHECK_THROWS_AS(nsl_oracle(m, {13}, terms), SizeLimitError);
    CHECK_THROWS_AS(nsl_oracle(m, {10, 11, 12, 13}, {0, 1}), SizeLimitError);
}

TEST_CASE("nsl_solve trivial and star cases") {
    auto m = metric_from_graph(path_graph(4));
    auto f = nsl_solve(m, {1, 3}, {1, 3});
    CHECK(f.cost == Rat(0));

    auto star = star_instance(5);
    std::vector<int> leaves{1, 2, 3, 4, 5};
    auto fs = nsl_solve(star.metric, star.depots, leaves);
    CHECK(fs.cost == Rat(1));  // one leaf per vehicle
    check_forest(fs, star.metric, star.depots, leaves);
}

TEST_CASE("nsl_solve within factor 16 of the oracle") {
    Rat worst(0);
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        auto m = random_metric(seed, 5 + static_cast<int>(seed % 3));
        Rng rng(seed, 42);
        std::vector<int> depots{static_cast<int>(rng.below(m.n)),
                                static_cast<int>(rng.below(m.n))};
        std::vector<int> terms;
        for (int i = 0; i < 3; ++i) terms.push_back(static_cast<int>(rng.below(m.n)));
        auto heur = nsl_solve(m, depots, terms);
        auto opt = nsl_oracle(m, depots, terms);
        check_forest(heur, m, depots, terms);
        CHECK(heur.cost >= opt.cost);
        CHECK(heur.cost <= Rat(kCnsl) * opt.cost + Rat(0));
        if (opt.cost > Rat(0)) worst = std::max(worst, heur.cost / opt.cost);
        else CHECK(heur.cost == Rat(0));
    }
    CHECK(worst <= Rat(kCnsl));
}

TEST_CASE("nsl_solve is deterministic") {
    auto m = random_metric(77, 8);
    std::vector<int> depots{0, 5};
    std::vector<int> terms{1, 2, 6, 7};
    auto a = nsl_solve(m, depots, terms);
    auto b = nsl_solve(m, depots, terms);
    CHECK(a.cost == b.cost);
    CHECK(a.trees == b.trees);
}

TEST_CASE("lb_max") {
    Metric m1(1);
    auto z = lb_max(bare(m1, {0}, {}, 1));
    CHECK(z.combined == Rat(0));
    CHECK(z.flow == Rat(0));

    auto girth = lb_max(petersen_instance());
    CHECK(girth.combined == Rat(1));
    CHECK(girth.nsl == Rat(0));
    CHECK(girth.max_pair == Rat(1));

    auto inst = random_instance(9, 6, 3, 2, 2);
    auto lbs = lb_max(inst);
    CHECK(lbs.combined ==
          std::max({lbs.flow, lbs.nsl, lbs.max_pair, lbs.max_src, lbs.max_dst}));
    for (Rat v : {lbs.flow, lbs.nsl, lbs.max_pair, lbs.max_src, lbs.max_dst})
        CHECK(v >= Rat(0));
}
