#include "daride/hst.hpp"

#include <algorithm>
#include <stdexcept>

#include "daride/rng.hpp"

namespace daride {

Rat HstTree::kappa(int u, int v) const {
    if (u == v) return Rat(0);
    int a = leaf_of[u], b = leaf_of[v];
    Rat sum(0);
    // climb the deeper side first
    while (a != b) {
        if (nodes[a].level <= nodes[b].level) {
            sum += nodes[a].edge_len;
            a = nodes[a].parent;
        } else {
            sum += nodes[b].edge_len;
            b = nodes[b].parent;
        }
    }
    return sum;
}

int HstTree::lca(int a, int b) const {
    while (a != b) {
        if (nodes[a].level <= nodes[b].level)
            a = nodes[a].parent;
        else
            b = nodes[b].parent;
    }
    return a;
}

int HstTree::depth() const {
    int best = 0;
    for (int v = 0; v < static_cast<int>(leaf_of.size()); ++v) {
        int node = leaf_of[v], d = 0;
        while (nodes[node].parent >= 0) {
            node = nodes[node].parent;
            ++d;
        }
        best = std::max(best, d);
    }
    return best;
}

void HstTree::check(const Metric& m) const {
    if (static_cast<int>(leaf_of.size()) != m.n)
        throw std::logic_error("hst: leaf map size mismatch");
    std::vector<char> used(nodes.size(), 0);
    for (int v = 0; v < m.n; ++v) {
        int leaf = leaf_of[v];
        if (leaf < 0 || nodes[leaf].leaf_vertex != v || used[leaf])
            throw std::logic_error("hst: leaves not bijective");
        used[leaf] = 1;
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& nd = nodes[i];
        if (static_cast<int>(i) == root) continue;
        if (nd.edge_len <= Rat(0)) throw std::logic_error("hst: nonpositive edge length");
        const auto& par = nodes[nd.parent];
        if (par.level != nd.level + 1) throw std::logic_error("hst: level gap");
        if (par.edge_len != Rat(0) && par.edge_len != Rat(2) * nd.edge_len)
            throw std::logic_error("hst: edge lengths not halving");
    }
    for (int u = 0; u < m.n; ++u)
        for (int v = u + 1; v < m.n; ++v)
            if (kappa(u, v) < m.at(u, v)) throw std::logic_error("hst: dominance violated");
    auto dmin = m.min_nonzero();
    if (dmin && m.n > 1) {
        Rat ratio = m.diameter() / *dmin;
        int bound = 0;
        Rat p(1);
        while (p < ratio) { p *= Rat(2); ++bound; }
        if (depth() > bound + 2) throw std::logic_error("hst: depth bound violated");
    }
}

namespace {

struct Builder {
    const Metric& m;
    std::vector<int> perm;      // permutation over all vertices
    std::vector<int> rank;      // vertex -> permutation position
    Rat beta;
    HstTree tree;

    int new_node(int parent, int level, Rat edge, int center) {
        HstNode nd;
        nd.parent = parent;
        nd.level = level;
        nd.edge_len = edge;
        nd.center = center;
        tree.nodes.push_back(nd);
        int id = static_cast<int>(tree.nodes.size()) - 1;
        if (parent >= 0) tree.nodes[parent].children.push_back(id);
        return id;
    }

    bool zero_diameter(const std::vector<int>& members) const {
        for (std::size_t i = 1; i < members.size(); ++i)
            if (m.at(members[0], members[i]) != Rat(0)) return false;
        return true;
    }

    void build(int node, const std::vector<int>& members) {
        int level = tree.nodes[node].level;
        if (members.size() == 1) {
            tree.nodes[node].leaf_vertex = members[0];
            tree.leaf_of[members[0]] = node;
            return;
        }
        Rat child_edge = beta * pow2(level - 1);
        if (zero_diameter(members)) {
            for (int v : members) {
                int leaf = new_node(node, level - 1, child_edge, v);
                tree.nodes[leaf].leaf_vertex = v;
                tree.leaf_of[v] = leaf;
            }
            return;
        }
        // capture radius for the child partition
        Rat radius = beta * pow2(level - 2);
        std::vector<std::vector<int>> groups;   // in center permutation order
        std::vector<int> group_center;
        std::vector<int> group_of(members.size(), -1);
        for (int u : perm) {
            std::vector<int> grabbed;
            for (std::size_t i = 0; i < members.size(); ++i) {
                if (group_of[i] >= 0) continue;
                if (m.at(u, members[i]) <= radius) {
                    group_of[i] = static_cast<int>(groups.size());
                    grabbed.push_back(members[i]);
                }
            }
            if (!grabbed.empty()) {
                groups.push_back(std::move(grabbed));
                group_center.push_back(u);
            }
        }
        for (std::size_t gi = 0; gi < groups.size(); ++gi) {
            int child = new_node(node, level - 1, child_edge, group_center[gi]);
            build(child, groups[gi]);
        }
    }
};

}  // namespace

HstTree frt_embed(const Metric& m, std::uint64_t seed) {
    if (m.n < 1) throw std::invalid_argument("frt_embed: empty metric");
    Rng rng(seed, 101);
    Builder b{m, {}, {}, Rat(0), {}};
    b.perm.resize(m.n);
    for (int v = 0; v < m.n; ++v) b.perm[v] = v;
    rng.shuffle(b.perm);
    b.beta = Rat(1) + Rat(static_cast<long long>(rng.below(1 << 16)), 1 << 16);
    b.tree.leaf_of.assign(m.n, -1);

    if (m.n == 1) {
        b.new_node(-1, 0, Rat(0), 0);
        b.tree.root = 0;
        b.tree.nodes[0].leaf_vertex = 0;
        b.tree.leaf_of[0] = 0;
        return b.tree;
    }

    Rat reach(0);
    for (int v = 0; v < m.n; ++v) reach = std::max(reach, m.at(b.perm[0], v));
    int top = 1;
    while (b.beta * pow2(top - 1) < reach) ++top;

    std::vector<int> all(m.n);
    for (int v = 0; v < m.n; ++v) all[v] = v;
    b.tree.root = b.new_node(-1, top, Rat(0), b.perm[0]);
    b.build(b.tree.root, all);
    return b.tree;
}

}  // namespace daride
