#include "daride/metric.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace daride {

std::vector<std::vector<std::pair<int, int>>> WeightedGraph::adjacency() const {
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
        adj[edges[i].u].push_back({edges[i].v, i});
        adj[edges[i].v].push_back({edges[i].u, i});
    }
    return adj;
}

bool WeightedGraph::connected() const {
    if (n == 0) return false;
    auto adj = adjacency();
    std::vector<char> seen(n, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int cnt = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (auto [v, e] : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                ++cnt;
                q.push(v);
            }
    }
    return cnt == n;
}

void WeightedGraph::check() const {
    if (n <= 0) throw std::invalid_argument("graph: empty vertex set");
    for (const auto& e : edges) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
            throw std::invalid_argument("graph: edge endpoint out of range");
        if (e.u == e.v) throw std::invalid_argument("graph: self-loop");
        if (e.len <= 0) throw std::invalid_argument("graph: nonpositive edge length");
    }
    if (!connected()) throw std::invalid_argument("graph: not connected");
}

void Metric::check() const {
    if (n < 0 || static_cast<std::size_t>(n) * n != d.size())
        throw std::invalid_argument("metric: bad matrix size");
    for (int u = 0; u < n; ++u) {
        if (at(u, u) != Rat(0)) throw std::invalid_argument("metric: nonzero diagonal");
        for (int v = 0; v < n; ++v) {
            if (at(u, v) < Rat(0)) throw std::invalid_argument("metric: negative distance");
            if (at(u, v) != at(v, u)) throw std::invalid_argument("metric: not symmetric");
        }
    }
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            for (int w = 0; w < n; ++w)
                if (at(u, w) > at(u, v) + at(v, w))
                    throw std::invalid_argument("metric: triangle inequality violated");
}

Rat Metric::diameter() const {
    Rat best(0);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) best = std::max(best, at(u, v));
    return best;
}

std::optional<Rat> Metric::min_nonzero() const {
    std::optional<Rat> best;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (at(u, v) > Rat(0) && (!best || at(u, v) < *best)) best = at(u, v);
    return best;
}

Metric Metric::induced(const std::vector<int>& verts) const {
    Metric m(static_cast<int>(verts.size()));
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) m.at(i, j) = at(verts[i], verts[j]);
    return m;
}

Metric metric_from_graph(const WeightedGraph& g) {
    g.check();
    auto adj = g.adjacency();
    Metric m(g.n);
    // Dijkstra per source on integer lengths.
    const long long inf = std::numeric_limits<long long>::max();
    for (int s = 0; s < g.n; ++s) {
        std::vector<long long> dist(g.n, inf);
        dist[s] = 0;
        using Item = std::pair<long long, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        pq.push({0, s});
        while (!pq.empty()) {
            auto [du, u] = pq.top();
            pq.pop();
            if (du != dist[u]) continue;
            for (auto [v, ei] : adj[u]) {
                long long nd = du + g.edges[ei].len;
                if (nd < dist[v]) {
                    dist[v] = nd;
                    pq.push({nd, v});
                }
            }
        }
        for (int v = 0; v < g.n; ++v) {
            if (dist[v] == inf) throw std::invalid_argument("metric_from_graph: disconnected");
            m.at(s, v) = Rat(dist[v]);
        }
    }
    return m;
}

WeightedGraph edge_subdivide(const WeightedGraph& g, long long unit) {
    g.check();
    if (unit <= 0) throw std::invalid_argument("edge_subdivide: unit must be positive");
    WeightedGraph out;
    out.n = g.n;
    for (const auto& e : g.edges) {
        if (e.len % unit != 0)
            throw std::invalid_argument("edge_subdivide: length not divisible by unit");
        long long pieces = e.len / unit;
        int prev = e.u;
        for (long long p = 1; p < pieces; ++p) {
            int mid = out.n++;
            out.edges.push_back({prev, mid, unit});
            prev = mid;
        }
        out.edges.push_back({prev, e.v, unit});
    }
    return out;
}

}  // namespace daride
