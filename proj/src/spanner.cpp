#include "daride/spanner.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace daride {

int Spanner::hop_dist(int u, int v, int skip_edge) const {
    if (u == v) return 0;
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
        if (i == skip_edge) continue;
        adj[edges[i].first].push_back({edges[i].second, i});
        adj[edges[i].second].push_back({edges[i].first, i});
    }
    std::vector<int> dist(n, -1);
    std::queue<int> q;
    dist[u] = 0;
    q.push(u);
    while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (auto [y, e] : adj[x])
            if (dist[y] < 0) {
                dist[y] = dist[x] + 1;
                if (y == v) return dist[y];
                q.push(y);
            }
    }
    return dist[v];
}

void Spanner::check(const std::vector<std::pair<int, int>>& input_edges) const {
    std::size_t assigned_total = 0;
    for (const auto& a : assigned) {
        if (a.size() > 2) throw std::logic_error("spanner: vertex assigned more than 2 edges");
        assigned_total += a.size();
    }
    if (assigned_total != edges.size())
        throw std::logic_error("spanner: assignment does not partition the edges");
    for (auto [u, v] : input_edges) {
        if (u == v) continue;
        int d = hop_dist(u, v);
        if (d < 0 || d > 2 * alpha) throw std::logic_error("spanner: stretch violated");
    }
    // girth > 2*alpha: any cycle through edge e has length 1 + dist without e
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
        int d = hop_dist(edges[i].first, edges[i].second, i);
        if (d >= 0 && 1 + d <= 2 * alpha) throw std::logic_error("spanner: girth too small");
    }
}

Spanner sparse_spanner(int n, std::vector<std::pair<int, int>> demand_edges, int alpha) {
    if (alpha < 1) throw std::invalid_argument("sparse_spanner: alpha must be >= 1");
    for (auto& e : demand_edges) {
        if (e.first == e.second) throw std::invalid_argument("sparse_spanner: self-loop");
        if (e.first > e.second) std::swap(e.first, e.second);
    }
    std::sort(demand_edges.begin(), demand_edges.end());
    demand_edges.erase(std::unique(demand_edges.begin(), demand_edges.end()),
                       demand_edges.end());

    Spanner sp;
    sp.n = n;
    sp.alpha = alpha;
    for (auto [u, v] : demand_edges) {
        int d = sp.hop_dist(u, v);
        if (d < 0 || d > 2 * alpha) sp.edges.push_back({u, v});
    }

    // assignment: repeatedly take the lowest-index vertex of degree <= 2
    sp.assigned.assign(n, {});
    std::vector<std::vector<int>> inc(n);
    std::vector<char> removed(sp.edges.size(), 0);
    std::vector<int> deg(n, 0);
    for (int i = 0; i < static_cast<int>(sp.edges.size()); ++i) {
        inc[sp.edges[i].first].push_back(i);
        inc[sp.edges[i].second].push_back(i);
        ++deg[sp.edges[i].first];
        ++deg[sp.edges[i].second];
    }
    std::size_t left = sp.edges.size();
    while (left > 0) {
        int pick = -1;
        for (int v = 0; v < n; ++v)
            if (deg[v] > 0 && deg[v] <= 2) {
                pick = v;
                break;
            }
        if (pick < 0)
            throw std::logic_error("sparse_spanner: assignment stalled with edges left");
        for (int ei : inc[pick]) {
            if (removed[ei]) continue;
            removed[ei] = 1;
            sp.assigned[pick].push_back(ei);
            --deg[sp.edges[ei].first];
            --deg[sp.edges[ei].second];
            --left;
        }
    }
    return sp;
}

}  // namespace daride
