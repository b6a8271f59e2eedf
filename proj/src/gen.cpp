#include "daride/gen.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

#include "daride/io.hpp"
#include "daride/rng.hpp"

namespace daride {

WeightedGraph petersen_graph() {
    WeightedGraph g;
    g.n = 10;
    for (int i = 0; i < 5; ++i) {
        g.edges.push_back({i, (i + 1) % 5, 1});
        g.edges.push_back({5 + i, 5 + (i + 2) % 5, 1});
        g.edges.push_back({i, 5 + i, 1});
    }
    return g;
}

WeightedGraph heawood_graph() {
    WeightedGraph g;
    g.n = 14;
    for (int i = 0; i < 14; ++i) g.edges.push_back({i, (i + 1) % 14, 1});
    for (int i = 0; i < 14; i += 2) g.edges.push_back({i, (i + 5) % 14, 1});
    return g;
}

int graph_girth(const WeightedGraph& g) {
    int best = -1;
    for (int skip = 0; skip < static_cast<int>(g.edges.size()); ++skip) {
        std::vector<std::vector<int>> adj(g.n);
        for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
            if (e == skip) continue;
            adj[g.edges[e].u].push_back(g.edges[e].v);
            adj[g.edges[e].v].push_back(g.edges[e].u);
        }
        std::vector<int> dist(g.n, -1);
        std::queue<int> q;
        dist[g.edges[skip].u] = 0;
        q.push(g.edges[skip].u);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj[u])
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    q.push(v);
                }
        }
        if (dist[g.edges[skip].v] >= 0) {
            int cyc = dist[g.edges[skip].v] + 1;
            if (best < 0 || cyc < best) best = cyc;
        }
    }
    return best;
}

GenKind gen_kind_from_string(const std::string& s) {
    if (s == "random-metric") return GenKind::RandomMetric;
    if (s == "random-graph") return GenKind::RandomGraph;
    if (s == "planar-grid") return GenKind::PlanarGrid;
    if (s == "star-gap") return GenKind::StarGap;
    if (s == "girth-gap") return GenKind::GirthGap;
    if (s == "file") return GenKind::File;
    throw std::invalid_argument("gen: unknown kind " + s);
}

namespace {

void random_endpoints(Instance& inst, Rng& rng, int m, int q, long long k) {
    for (int j = 0; j < q; ++j)
        inst.depots.push_back(static_cast<int>(rng.below(inst.n())));
    for (int i = 0; i < m; ++i) {
        int s = static_cast<int>(rng.below(inst.n()));
        int t = static_cast<int>(rng.below(inst.n()));
        inst.demands.push_back({s, t, 1});
    }
    inst.capacity = k;
}

}  // namespace

Instance gen(const GenSpec& spec) {
    Instance inst;
    switch (spec.kind) {
        case GenKind::RandomMetric: {
            if (spec.n < 1 || spec.m < 0 || spec.q < 1 || spec.k < 1)
                throw std::invalid_argument("gen: bad random-metric parameters");
            Rng rng(spec.seed, 1);
            WeightedGraph g;
            g.n = spec.n;
            for (int u = 0; u < spec.n; ++u)
                for (int v = u + 1; v < spec.n; ++v)
                    g.edges.push_back({u, v, rng.range(1, spec.max_len)});
            inst.metric = spec.n == 1 ? Metric(1) : metric_from_graph(g);
            random_endpoints(inst, rng, spec.m, spec.q, spec.k);
            break;
        }
        case GenKind::RandomGraph: {
            if (spec.n < 2 || spec.q < 1 || spec.k < 1)
                throw std::invalid_argument("gen: bad random-graph parameters");
            Rng rng(spec.seed, 2);
            WeightedGraph g;
            g.n = spec.n;
            for (int v = 1; v < spec.n; ++v)
                g.edges.push_back({static_cast<int>(rng.below(v)), v,
                                   rng.range(1, spec.max_len)});
            for (int extra = 0; extra < spec.n; ++extra) {
                int u = static_cast<int>(rng.below(spec.n));
                int v = static_cast<int>(rng.below(spec.n));
                if (u == v) continue;
                bool dup = false;
                for (const auto& e : g.edges)
                    if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) dup = true;
                if (!dup) g.edges.push_back({u, v, rng.range(1, spec.max_len)});
            }
            inst.metric = metric_from_graph(g);
            inst.graph = g;
            random_endpoints(inst, rng, spec.m, spec.q, spec.k);
            break;
        }
        case GenKind::PlanarGrid: {
            if (spec.grid_w < 1 || spec.grid_h < 1 || spec.q < 1 || spec.k < 1)
                throw std::invalid_argument("gen: bad planar-grid parameters");
            Rng rng(spec.seed, 3);
            WeightedGraph g;
            g.n = spec.grid_w * spec.grid_h;
            for (int y = 0; y < spec.grid_h; ++y)
                for (int x = 0; x < spec.grid_w; ++x) {
                    int v = y * spec.grid_w + x;
                    if (x + 1 < spec.grid_w) g.edges.push_back({v, v + 1, 1});
                    if (y + 1 < spec.grid_h) g.edges.push_back({v, v + spec.grid_w, 1});
                }
            inst.metric = metric_from_graph(g);
            inst.graph = g;
            random_endpoints(inst, rng, spec.m, spec.q, spec.k);
            break;
        }
        case GenKind::StarGap: {
            if (spec.q < 2) throw std::invalid_argument("gen: star-gap needs q >= 2");
            WeightedGraph g;
            g.n = spec.q + 1;
            for (int i = 1; i <= spec.q; ++i) g.edges.push_back({0, i, 1});
            inst.metric = metric_from_graph(g);
            inst.graph = g;
            for (int j = 0; j < spec.q; ++j) inst.depots.push_back(0);
            for (int a = 1; a <= spec.q; ++a)
                for (int b = 1; b <= spec.q; ++b)
                    if (a != b) inst.demands.push_back({a, b, 1});
            inst.capacity = static_cast<long long>(inst.demands.size());
            break;
        }
        case GenKind::GirthGap: {
            WeightedGraph g;
            int want_girth = 0;
            if (spec.cage == "petersen") {
                g = petersen_graph();
                want_girth = 5;
            } else if (spec.cage == "heawood") {
                g = heawood_graph();
                want_girth = 6;
            } else {
                throw std::invalid_argument("gen: unknown cage " + spec.cage);
            }
            if (graph_girth(g) != want_girth)
                throw std::logic_error("gen: cage girth mismatch");
            inst.metric = metric_from_graph(g);
            inst.graph = g;
            for (int v = 0; v < g.n; ++v) inst.depots.push_back(v);
            for (const auto& e : g.edges)
                inst.demands.push_back({std::min(e.u, e.v), std::max(e.u, e.v), 1});
            inst.capacity = static_cast<long long>(inst.demands.size());
            break;
        }
        case GenKind::File:
            inst = read_instance_file(spec.path);
            break;
    }
    inst.check();
    return inst;
}

}  // namespace daride
