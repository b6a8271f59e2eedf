#include "daride/tsp.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace daride {

Rat Tour::path_len(const Metric& m, int i, int j) const {
    Rat sum(0);
    for (int p = i; p < j; ++p) sum += m.at(order[p], order[p + 1]);
    return sum;
}

std::pair<std::vector<std::pair<int, int>>, Rat> mst_edges(const Metric& m,
                                                           const std::vector<int>& pts) {
    int p = static_cast<int>(pts.size());
    std::vector<std::pair<int, int>> out;
    Rat total(0);
    if (p <= 1) return {out, total};
    std::vector<char> in(p, 0);
    std::vector<Rat> best(p);
    std::vector<int> from(p, 0);
    in[0] = 1;
    for (int v = 1; v < p; ++v) best[v] = m.at(pts[0], pts[v]);
    for (int it = 1; it < p; ++it) {
        int pick = -1;
        for (int v = 0; v < p; ++v) {
            if (in[v]) continue;
            if (pick < 0 || best[v] < best[pick]) pick = v;
        }
        in[pick] = 1;
        out.push_back({from[pick], pick});
        total += best[pick];
        for (int v = 0; v < p; ++v)
            if (!in[v] && m.at(pts[pick], pts[v]) < best[v]) {
                best[v] = m.at(pts[pick], pts[v]);
                from[v] = pick;
            }
    }
    return {out, total};
}

Tour tsp_tour(const Metric& m, const std::vector<int>& vertices) {
    if (vertices.empty()) throw std::invalid_argument("tsp_tour: empty vertex set");
    std::vector<int> pts;
    std::set<int> seen;
    for (int v : vertices)
        if (seen.insert(v).second) pts.push_back(v);

    Tour tour;
    if (pts.size() == 1) {
        tour.order = pts;
        return tour;
    }
    auto [edges, mst_len] = mst_edges(m, pts);
    std::vector<std::vector<int>> children(pts.size());
    for (auto [a, b] : edges) children[a].push_back(b);
    for (auto& c : children)
        std::sort(c.begin(), c.end(), [&](int x, int y) { return pts[x] < pts[y]; });

    std::vector<int> stack{0};
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        tour.order.push_back(pts[u]);
        for (auto it = children[u].rbegin(); it != children[u].rend(); ++it)
            stack.push_back(*it);
    }
    for (std::size_t i = 0; i + 1 < tour.order.size(); ++i)
        tour.length += m.at(tour.order[i], tour.order[i + 1]);
    tour.length += m.at(tour.order.back(), tour.order.front());

    if (tour.length > Rat(2) * mst_len)
        throw std::logic_error("tsp_tour: doubling bound violated");
    return tour;
}

}  // namespace daride
