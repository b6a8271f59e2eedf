#include "daride/cover.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace daride {

int ClusterCover::co_cluster(int u, int v) const {
    for (int c = 0; c < static_cast<int>(clusters.size()); ++c) {
        const auto& cl = clusters[c];
        if (std::binary_search(cl.begin(), cl.end(), u) &&
            std::binary_search(cl.begin(), cl.end(), v))
            return c;
    }
    return -1;
}

namespace {

struct SplitRun {
    const std::vector<std::vector<int>>* adj;  // unit graph adjacency
    int n = 0;                                 // unit graph size
    long long gs;                              // band spacing
    int r;
    int n_orig;
    std::set<std::pair<std::vector<int>, int>> found;  // (cluster, color word)

    // members/terms sorted; the induced subgraph on members is connected
    void recurse(const std::vector<int>& members, const std::vector<int>& terms,
                 int depth, int word) {
        if (depth == r) {
            std::vector<int> cluster;
            for (int v : terms)
                if (v < n_orig) cluster.push_back(v);
            if (!cluster.empty()) found.insert({cluster, word});
            return;
        }
        std::vector<char> memb(n, 0), is_term(n, 0);
        for (int v : members) memb[v] = 1;
        for (int v : terms) is_term[v] = 1;

        std::vector<int> lev(n, -1);
        std::queue<int> q;
        lev[members[0]] = 0;
        q.push(members[0]);
        int maxlev = 0;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : (*adj)[u]) {
                if (!memb[v] || lev[v] >= 0) continue;
                lev[v] = lev[u] + 1;
                maxlev = std::max(maxlev, lev[v]);
                q.push(v);
            }
        }
        for (long long s = 0; s * gs <= maxlev; ++s) {
            long long band_lo = s * gs;
            long long band_hi = (s + 2) * gs - 1;
            long long win_lo = std::max<long long>(0, (s - 1) * gs);
            long long win_hi = (s + 3) * gs;
            std::vector<char> win(n, 0), seen(n, 0);
            for (int v : members)
                if (lev[v] >= win_lo && lev[v] <= win_hi) win[v] = 1;
            for (int start : members) {
                if (!win[start] || seen[start]) continue;
                std::vector<int> comp;
                std::queue<int> cq;
                cq.push(start);
                seen[start] = 1;
                while (!cq.empty()) {
                    int u = cq.front();
                    cq.pop();
                    comp.push_back(u);
                    for (int v : (*adj)[u])
                        if (win[v] && !seen[v]) {
                            seen[v] = 1;
                            cq.push(v);
                        }
                }
                std::sort(comp.begin(), comp.end());
                std::vector<int> new_terms;
                for (int v : comp)
                    if (is_term[v] && lev[v] >= band_lo && lev[v] <= band_hi)
                        new_terms.push_back(v);
                if (new_terms.empty()) continue;
                recurse(comp, new_terms, depth + 1,
                        word * 3 + static_cast<int>(s % 3));
            }
        }
    }
};

long long pow_int(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

void check_cover(const ClusterCover& cover, const Metric& dm, CoverMode mode,
                 long long gamma, int r) {
    // every gamma-close pair shares a cluster
    for (int u = 0; u < dm.n; ++u)
        for (int v = u + 1; v < dm.n; ++v)
            if (dm.at(u, v) <= Rat(gamma) && cover.co_cluster(u, v) < 0)
                throw std::logic_error("split_cover: close pair not co-clustered");
    // vertex multiplicity
    for (int v = 0; v < dm.n; ++v) {
        int cnt = 0;
        for (const auto& cl : cover.clusters)
            if (std::binary_search(cl.begin(), cl.end(), v)) ++cnt;
        if (cnt > pow_int(2, r)) throw std::logic_error("split_cover: multiplicity too high");
    }
    // diameter bound (loose implementation constant, empirical max recorded)
    if (cover.max_diameter > Rat(50) * Rat(r) * Rat(r) * Rat(gamma))
        throw std::logic_error("split_cover: cluster diameter too large");
    if (mode == CoverMode::Separated) {
        if (cover.num_colors > pow_int(3, r))
            throw std::logic_error("split_cover: too many colors");
        for (std::size_t a = 0; a < cover.clusters.size(); ++a)
            for (std::size_t b = a + 1; b < cover.clusters.size(); ++b) {
                if (cover.colors[a] != cover.colors[b]) continue;
                for (int u : cover.clusters[a])
                    for (int v : cover.clusters[b])
                        if (dm.at(u, v) < Rat(gamma))
                            throw std::logic_error("split_cover: same-color clusters too close");
            }
    } else {
        // ball containment
        for (int v = 0; v < dm.n; ++v) {
            std::vector<int> ball;
            for (int u = 0; u < dm.n; ++u)
                if (dm.at(v, u) <= Rat(gamma)) ball.push_back(u);
            bool ok = false;
            for (const auto& cl : cover.clusters) {
                bool all = true;
                for (int u : ball)
                    if (!std::binary_search(cl.begin(), cl.end(), u)) {
                        all = false;
                        break;
                    }
                if (all) {
                    ok = true;
                    break;
                }
            }
            if (!ok) throw std::logic_error("split_cover: ball not covered");
        }
    }
}

}  // namespace

ClusterCover split_cover(const WeightedGraph& g, long long gamma, int r, CoverMode mode) {
    if (gamma < 1) throw std::invalid_argument("split_cover: gamma must be >= 1");
    if (r < 1) throw std::invalid_argument("split_cover: r must be >= 1");
    g.check();

    // Sparse mode doubles the working scale so that whole gamma-balls, not
    // just gamma-close pairs, land inside single clusters.
    long long gs = mode == CoverMode::Sparse ? 2 * gamma : gamma;

    WeightedGraph unit = edge_subdivide(g);
    std::vector<std::vector<int>> adj(unit.n);
    for (const auto& e : unit.edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    for (auto& lst : adj) std::sort(lst.begin(), lst.end());

    std::vector<int> all(unit.n);
    for (int v = 0; v < unit.n; ++v) all[v] = v;
    SplitRun run{&adj, unit.n, gs, r, g.n, {}};
    run.recurse(all, all, 0, 0);

    ClusterCover cover;
    cover.gamma = gamma;
    cover.r = r;
    std::map<int, int> color_ids;
    for (const auto& [cluster, word] : run.found) {
        cover.clusters.push_back(cluster);
        if (mode == CoverMode::Separated) {
            if (!color_ids.count(word))
                color_ids[word] = static_cast<int>(color_ids.size());
            cover.colors.push_back(color_ids[word]);
        }
    }
    cover.num_colors = static_cast<int>(color_ids.size());

    Metric dm = metric_from_graph(g);
    for (const auto& cl : cover.clusters)
        for (std::size_t i = 0; i < cl.size(); ++i)
            for (std::size_t j = i + 1; j < cl.size(); ++j)
                cover.max_diameter = std::max(cover.max_diameter, dm.at(cl[i], cl[j]));
    for (int v = 0; v < g.n; ++v) {
        int cnt = 0;
        for (const auto& cl : cover.clusters)
            if (std::binary_search(cl.begin(), cl.end(), v)) ++cnt;
        cover.max_multiplicity = std::max(cover.max_multiplicity, cnt);
    }

    check_cover(cover, dm, mode, gamma, r);
    return cover;
}

}  // namespace daride
