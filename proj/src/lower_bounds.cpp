#include "daride/lower_bounds.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>

#include "daride/errors.hpp"
#include "daride/matching.hpp"

namespace daride {

Rat RootedForest::tree_length(const Metric& m, int j) const {
    Rat len(0);
    for (auto [u, v] : trees[j]) len += m.at(u, v);
    return len;
}

bool RootedForest::covers(const std::vector<int>& depots,
                          const std::vector<int>& terminals) const {
    std::set<int> covered(depots.begin(), depots.end());
    for (const auto& tree : trees)
        for (auto [u, v] : tree) {
            covered.insert(u);
            covered.insert(v);
        }
    for (int t : terminals)
        if (!covered.count(t)) return false;
    return true;
}

Rat flow_lb(const Instance& inst) {
    Rat sum(0);
    for (const auto& dm : inst.demands) sum += Rat(dm.w) * inst.metric.at(dm.s, dm.t);
    return sum / (Rat(inst.q()) * Rat(inst.capacity));
}

std::tuple<Rat, Rat, Rat> trivial_lbs(const Instance& inst) {
    Rat max_pair(0), max_src(0), max_dst(0);
    for (const auto& dm : inst.demands) {
        if (dm.s == dm.t) continue;  // already delivered, no visit required
        max_pair = std::max(max_pair, inst.metric.at(dm.s, dm.t));
        Rat ds = inst.metric.at(dm.s, inst.depots[0]);
        Rat dt = inst.metric.at(dm.t, inst.depots[0]);
        for (int r : inst.depots) {
            ds = std::min(ds, inst.metric.at(dm.s, r));
            dt = std::min(dt, inst.metric.at(dm.t, r));
        }
        max_src = std::max(max_src, ds);
        max_dst = std::max(max_dst, dt);
    }
    return {max_pair, max_src, max_dst};
}

namespace {

// piece of an MST component: vertices and edges in P-index space
struct NslPiece {
    std::vector<int> verts;
    std::vector<std::pair<int, int>> edges;
    Rat len{0};
};

// Prim MST on the induced complete graph over points; ties broken by lowest
// vertex index so the whole solver is deterministic.
std::vector<std::pair<int, int>> mst_edges_on(const Metric& m, const std::vector<int>& pts) {
    int p = static_cast<int>(pts.size());
    std::vector<std::pair<int, int>> out;
    if (p <= 1) return out;
    std::vector<char> in(p, 0);
    std::vector<Rat> best(p, Rat(0));
    std::vector<int> from(p, -1);
    in[0] = 1;
    for (int v = 1; v < p; ++v) {
        best[v] = m.at(pts[0], pts[v]);
        from[v] = 0;
    }
    for (int it = 1; it < p; ++it) {
        int pick = -1;
        for (int v = 0; v < p; ++v) {
            if (in[v]) continue;
            if (pick < 0 || best[v] < best[pick]) pick = v;
        }
        in[pick] = 1;
        out.push_back({from[pick], pick});
        for (int v = 0; v < p; ++v)
            if (!in[v] && m.at(pts[pick], pts[v]) < best[v]) {
                best[v] = m.at(pts[pick], pts[v]);
                from[v] = pick;
            }
    }
    return out;
}

struct SplitContext {
    const std::vector<std::vector<std::pair<int, Rat>>>* adj;  // (neighbor, weight)
    Rat lambda;
    std::vector<NslPiece>* out;
};

// Splits the subtree under u into pieces of length in [lambda, 2*lambda);
// returns the residual (< lambda) still attached at u.
NslPiece split_dfs(const SplitContext& ctx, int u, int parent) {
    NslPiece res;
    res.verts.push_back(u);
    for (auto [c, w] : (*ctx.adj)[u]) {
        if (c == parent) continue;
        NslPiece sub = split_dfs(ctx, c, u);
        Rat clen = sub.len + w;
        if (clen >= ctx.lambda) {
            sub.verts.push_back(u);
            sub.edges.push_back({u, c});
            sub.len = clen;
            ctx.out->push_back(std::move(sub));
        } else {
            for (int v : sub.verts) res.verts.push_back(v);
            for (auto e : sub.edges) res.edges.push_back(e);
            res.edges.push_back({u, c});
            res.len += clen;
            if (res.len >= ctx.lambda) {
                ctx.out->push_back(res);
                res = NslPiece{};
                res.verts.push_back(u);
            }
        }
    }
    return res;
}

struct NslAssignment {
    std::vector<NslPiece> pieces;  // pieces containing at least one terminal
    std::vector<int> match_of;     // piece -> vehicle
};

// Try to serve all terminal pieces at guess lambda with at most `cap` pieces
// per vehicle.
std::optional<NslAssignment> nsl_try(const Metric& m, const std::vector<int>& pts,
                                     const std::vector<char>& is_term,
                                     const std::vector<int>& depots, Rat lambda, int cap) {
    int p = static_cast<int>(pts.size());
    auto mst = mst_edges_on(m, pts);

    // components after deleting long MST edges
    std::vector<std::vector<std::pair<int, Rat>>> adj(p);
    for (auto [a, b] : mst) {
        Rat w = m.at(pts[a], pts[b]);
        if (w > lambda) continue;
        adj[a].push_back({b, w});
        adj[b].push_back({a, w});
    }
    for (auto& lst : adj) std::sort(lst.begin(), lst.end(), [](auto& x, auto& y) {
        return x.first < y.first;
    });

    std::vector<char> seen(p, 0);
    std::vector<NslPiece> pieces;
    for (int root = 0; root < p; ++root) {
        if (seen[root]) continue;
        // mark component
        std::queue<int> q;
        q.push(root);
        seen[root] = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (auto [v, w] : adj[u])
                if (!seen[v]) {
                    seen[v] = 1;
                    q.push(v);
                }
        }
        SplitContext ctx{&adj, lambda, &pieces};
        NslPiece res = split_dfs(ctx, root, -1);
        pieces.push_back(std::move(res));
    }
    // only pieces carrying terminals need assignment
    std::vector<NslPiece> term_pieces;
    for (auto& pc : pieces) {
        bool has = false;
        for (int v : pc.verts)
            if (is_term[v]) has = true;
        if (has) term_pieces.push_back(std::move(pc));
    }

    BipartiteMatcher bm(static_cast<int>(term_pieces.size()),
                        static_cast<int>(depots.size()));
    for (int i = 0; i < static_cast<int>(term_pieces.size()); ++i)
        for (int j = 0; j < static_cast<int>(depots.size()); ++j) {
            Rat dist = m.at(depots[j], pts[term_pieces[i].verts[0]]);
            for (int v : term_pieces[i].verts)
                dist = std::min(dist, m.at(depots[j], pts[v]));
            if (dist <= lambda) bm.add_edge(i, j);
        }
    std::vector<int> caps(depots.size(), cap);
    if (bm.solve(caps) != static_cast<int>(term_pieces.size())) return std::nullopt;
    return NslAssignment{std::move(term_pieces), bm.match_of()};
}

// BFS spanning tree of the union of piece edges and depot stems; keeps the
// forest acyclic when pieces share vertices.
std::vector<std::pair<int, int>> spanning_subtree(const Metric& m, int root,
                                                  std::vector<std::pair<int, int>> edges) {
    std::map<int, std::vector<int>> adj;
    for (auto [u, v] : edges) {
        if (u == v) continue;
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& [k, lst] : adj) std::sort(lst.begin(), lst.end());
    std::vector<std::pair<int, int>> tree;
    std::set<int> seen{root};
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        auto it = adj.find(u);
        if (it == adj.end()) continue;
        for (int v : it->second)
            if (!seen.count(v)) {
                seen.insert(v);
                tree.push_back({u, v});
                q.push(v);
            }
    }
    (void)m;
    return tree;
}

}  // namespace

RootedForest nsl_solve(const Metric& metric, const std::vector<int>& depots,
                       const std::vector<int>& terminals) {
    RootedForest forest;
    forest.trees.assign(depots.size(), {});

    std::set<int> depot_verts(depots.begin(), depots.end());
    std::vector<int> terms;
    for (int t : terminals)
        if (!depot_verts.count(t)) terms.push_back(t);
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    if (terms.empty()) return forest;  // every terminal sits on a depot

    // point set: distinct depot vertices then terminals
    std::vector<int> pts(depot_verts.begin(), depot_verts.end());
    for (int t : terms) pts.push_back(t);
    std::vector<char> is_term(pts.size(), 0);
    for (std::size_t i = depot_verts.size(); i < pts.size(); ++i) is_term[i] = 1;

    // candidate guesses: pairwise distances plus a guaranteed-feasible cap
    std::set<Rat> cand_set{Rat(0)};
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            cand_set.insert(metric.at(pts[i], pts[j]));
    cand_set.insert(metric.diameter() * Rat(metric.n));
    std::vector<Rat> cand(cand_set.begin(), cand_set.end());

    int lo = 0, hi = static_cast<int>(cand.size()) - 1;
    while (lo < hi) {
        int mid = (lo + hi) / 2;
        if (nsl_try(metric, pts, is_term, depots, cand[mid], 4))
            hi = mid;
        else
            lo = mid + 1;
    }
    auto assign = nsl_try(metric, pts, is_term, depots, cand[lo], 4);
    if (!assign) throw std::logic_error("nsl_solve: no feasible guess");

    // smallest per-depot piece cap that still works at this guess
    for (int cap = 1; cap < 4; ++cap) {
        if (auto tighter = nsl_try(metric, pts, is_term, depots, cand[lo], cap)) {
            assign = std::move(tighter);
            break;
        }
    }

    for (std::size_t i = 0; i < assign->pieces.size(); ++i) {
        int j = assign->match_of[i];
        const auto& pc = assign->pieces[i];
        // stem: depot to the closest piece vertex
        int best_v = pc.verts[0];
        for (int v : pc.verts)
            if (metric.at(depots[j], pts[v]) < metric.at(depots[j], pts[best_v]) ||
                (metric.at(depots[j], pts[v]) == metric.at(depots[j], pts[best_v]) &&
                 pts[v] < pts[best_v]))
                best_v = v;
        auto& tree = forest.trees[j];
        tree.push_back({depots[j], pts[best_v]});
        for (auto [a, b] : pc.edges) tree.push_back({pts[a], pts[b]});
    }
    for (std::size_t j = 0; j < depots.size(); ++j) {
        forest.trees[j] = spanning_subtree(metric, depots[j], forest.trees[j]);
        forest.cost = std::max(forest.cost, forest.tree_length(metric, static_cast<int>(j)));
    }
    return forest;
}

namespace {

// Dreyfus-Wagner over the full metric: dp[S][v] = min tree containing
// terminal set S and vertex v. One metric-hop relaxation replaces the
// shortest-path phase.
struct DreyfusWagner {
    const Metric& m;
    std::vector<int> terms;
    int n, t;
    std::vector<std::vector<Rat>> dp;      // [mask][v]
    std::vector<std::vector<int>> split;   // chosen submask, 0 = leaf
    std::vector<std::vector<int>> ext;     // chosen hop vertex

    explicit DreyfusWagner(const Metric& metric, std::vector<int> terminals)
        : m(metric), terms(std::move(terminals)), n(metric.n),
          t(static_cast<int>(terms.size())) {
        int full = 1 << t;
        dp.assign(full, std::vector<Rat>(n, Rat(0)));
        split.assign(full, std::vector<int>(n, 0));
        ext.assign(full, std::vector<int>(n, -1));
        for (int mask = 1; mask < full; ++mask) {
            std::vector<Rat> raw(n);
            std::vector<int> raw_split(n, 0);
            if ((mask & (mask - 1)) == 0) {
                int i = __builtin_ctz(static_cast<unsigned>(mask));
                for (int v = 0; v < n; ++v) raw[v] = m.at(terms[i], v);
            } else {
                int low = mask & (-mask);
                for (int v = 0; v < n; ++v) {
                    bool first = true;
                    for (int sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask) {
                        if (!(sub & low)) continue;  // canonical: submask keeps lowest bit
                        Rat c = dp[sub][v] + dp[mask ^ sub][v];
                        if (first || c < raw[v]) {
                            raw[v] = c;
                            raw_split[v] = sub;
                            first = false;
                        }
                    }
                }
            }
            for (int v = 0; v < n; ++v) {
                dp[mask][v] = raw[v];
                split[mask][v] = raw_split[v];
                ext[mask][v] = v;
                for (int u = 0; u < n; ++u) {
                    Rat c = raw[u] + m.at(u, v);
                    if (c < dp[mask][v]) {
                        dp[mask][v] = c;
                        split[mask][v] = raw_split[u];
                        ext[mask][v] = u;
                    }
                }
            }
        }
    }

    void rebuild(int mask, int v, std::vector<std::pair<int, int>>& out) const {
        if (mask == 0) return;
        int u = ext[mask][v];
        if (u != v) out.push_back({v, u});
        if ((mask & (mask - 1)) == 0) {
            int i = __builtin_ctz(static_cast<unsigned>(mask));
            if (terms[i] != u) out.push_back({u, terms[i]});
            return;
        }
        int sub = split[mask][v];
        rebuild_at(sub, u, out);
        rebuild_at(mask ^ sub, u, out);
    }

    // rebuild a subtree whose anchor vertex is u (no extension hop at the top)
    void rebuild_at(int mask, int u, std::vector<std::pair<int, int>>& out) const {
        rebuild(mask, u, out);
    }
};

}  // namespace

RootedForest nsl_oracle(const Metric& metric, const std::vector<int>& depots,
                        const std::vector<int>& terminals) {
    std::set<int> depot_verts(depots.begin(), depots.end());
    std::vector<int> terms;
    for (int tv : terminals)
        if (!depot_verts.count(tv)) terms.push_back(tv);
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());

    if (static_cast<int>(terms.size()) > 8)
        throw SizeLimitError("nsl_oracle: more than 8 terminals");
    if (static_cast<int>(depots.size()) > 3)
        throw SizeLimitError("nsl_oracle: more than 3 depots");

    RootedForest forest;
    forest.trees.assign(depots.size(), {});
    if (terms.empty()) return forest;

    DreyfusWagner dw(metric, terms);
    int t = static_cast<int>(terms.size());
    int D = static_cast<int>(depots.size());

    // enumerate terminal -> depot assignments
    long long total = 1;
    for (int i = 0; i < t; ++i) total *= D;
    Rat best_cost(0);
    std::vector<int> best_assign;
    bool have = false;
    for (long long code = 0; code < total; ++code) {
        long long c = code;
        std::vector<int> masks(D, 0);
        for (int i = 0; i < t; ++i) {
            masks[c % D] |= 1 << i;
            c /= D;
        }
        Rat cost(0);
        for (int j = 0; j < D; ++j)
            if (masks[j]) cost = std::max(cost, dw.dp[masks[j]][depots[j]]);
        if (!have || cost < best_cost) {
            best_cost = cost;
            best_assign = masks;
            have = true;
        }
    }
    forest.cost = best_cost;
    for (int j = 0; j < D; ++j)
        if (best_assign[j]) {
            std::vector<std::pair<int, int>> edges;
            dw.rebuild(best_assign[j], depots[j], edges);
            forest.trees[j] = spanning_subtree(metric, depots[j], edges);
        }
    return forest;
}

LowerBoundSet lb_max(const Instance& inst) {
    LowerBoundSet lbs;
    lbs.flow = flow_lb(inst);
    std::tie(lbs.max_pair, lbs.max_src, lbs.max_dst) = trivial_lbs(inst);
    std::vector<int> terms;
    for (const auto& dm : inst.demands) {
        if (dm.s == dm.t) continue;
        terms.push_back(dm.s);
        terms.push_back(dm.t);
    }
    auto forest = nsl_solve(inst.metric, inst.depots, terms);
    lbs.nsl = forest.cost / Rat(kCnsl);
    lbs.combined = std::max({lbs.flow, lbs.nsl, lbs.max_pair, lbs.max_src, lbs.max_dst});
    return lbs;
}

}  // namespace daride
