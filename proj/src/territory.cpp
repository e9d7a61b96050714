#include "copshield/territory.hpp"

#include <algorithm>
#include <queue>

namespace copshield {

std::set<int> cop_territory(const Planarization& p, const PlanarSubgraph& H) {
    for (int v : H.verts)
        if (!p.adj.count(v)) throw Error("territory: vertex not in planarization");
    std::set<int> out;
    for (const Edge& e : p.base.edges) {
        for (int w : p.edgePath(e.id)) {
            if (H.containsVertex(w)) {
                out.insert(e.id);
                break;
            }
        }
    }
    return out;
}

TerritoryView robber_territory(const Planarization& p, const PlanarSubgraph& H, int robberAt) {
    const OnePlaneGraph& g = p.base;
    if (!g.vertices.count(robberAt)) throw Error("territory: robber not on a G-vertex");
    if (H.containsVertex(robberAt)) throw Error("territory: robber on a guarded vertex");

    TerritoryView view;
    view.H = H;
    view.robberAt = robberAt;
    view.copEdges = cop_territory(p, H);

    std::map<int, std::vector<std::pair<int, int>>> adj;
    for (const Edge& e : g.edges) {
        if (view.copEdges.count(e.id)) continue;
        adj[e.u].push_back({e.v, e.id});
        adj[e.v].push_back({e.u, e.id});
    }
    for (auto& [v, nb] : adj) std::sort(nb.begin(), nb.end());

    std::queue<int> q;
    q.push(robberAt);
    view.robberComponent.insert(robberAt);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        auto it = adj.find(v);
        if (it == adj.end()) continue;
        for (auto [w, e] : it->second) {
            view.componentEdges.insert(e);
            if (view.robberComponent.insert(w).second) q.push(w);
        }
    }

    const std::set<int>& R = view.robberComponent;
    for (int v : H.verts) {
        std::vector<XEdge>& out = view.boundary[v];
        if (!p.isDummy(v)) {
            for (const Edge& e : g.edges) {
                if (!e.incident(v)) continue;
                std::vector<int> path = p.edgePath(e.id);
                bool onlyV = std::all_of(path.begin(), path.end(), [&](int w) {
                    return w == v || !H.containsVertex(w);
                });
                if (onlyV && R.count(e.other(v))) out.push_back({e.id, -1});
            }
        } else {
            Crossing c = crossing_at(g, p.crossingOfDummy(v));
            auto half = [&](int edgeId, int end, int gEnd) {
                if (R.count(gEnd)) out.push_back({edgeId, end});
            };
            half(c.edgeA, 0, c.au);
            half(c.edgeA, 1, c.av);
            half(c.edgeB, 0, c.bu);
            half(c.edgeB, 1, c.bv);
        }
        std::sort(out.begin(), out.end());
    }
    return view;
}

bool check_no_x(const Planarization& p, const TerritoryView& view) {
    const OnePlaneGraph& g = p.base;
    for (std::size_t i = 0; i < g.crossings.size(); ++i) {
        Crossing c = crossing_at(g, static_cast<int>(i));
        if (!view.componentEdges.count(c.edgeA) || !view.componentEdges.count(c.edgeB)) continue;
        bool kiteInside = false;
        for (const Edge& e : g.edges) {
            if (g.isCrossed(e.id) || !view.componentEdges.count(e.id)) continue;
            for (auto [x, y] : c.consecutivePairs())
                if ((e.u == x && e.v == y) || (e.u == y && e.v == x)) kiteInside = true;
        }
        if (!kiteInside) return false;
    }
    return true;
}

OnePlaneGraph extend_with_boundary(const Planarization& p, const TerritoryView& view, int v) {
    if (!view.H.containsVertex(v)) throw Error("extend_with_boundary: vertex not in H");
    const OnePlaneGraph& g = p.base;

    OnePlaneGraph out;
    out.vertices = view.robberComponent;
    for (int e : view.componentEdges) {
        const Edge& ge = g.edgeRef(e);
        out.edges.push_back(ge);
    }
    std::sort(out.edges.begin(), out.edges.end(),
              [](const Edge& a, const Edge& b) { return a.id < b.id; });

    auto it = view.boundary.find(v);
    if (it != view.boundary.end() && !it->second.empty()) {
        out.vertices.insert(v);
        int next = g.edges.empty() ? 0 : g.edges.back().id + 1;
        for (const XEdge& xe : it->second) {
            const Edge& ge = g.edgeRef(xe.edge);
            if (xe.part < 0) {
                out.edges.push_back(ge);
            } else {
                // half-edge from the dummy v to the G-endpoint on the R side
                int gEnd = xe.part == 0 ? ge.u : ge.v;
                out.edges.push_back({next++, v, gEnd});
            }
        }
        std::sort(out.edges.begin(), out.edges.end(),
                  [](const Edge& a, const Edge& b) { return a.id < b.id; });
    }

    std::set<int> present;
    for (const Edge& e : out.edges) present.insert(e.id);
    for (auto [a, b] : g.crossings)
        if (present.count(a) && present.count(b)) out.crossings.push_back({a, b});
    return out;
}

} // namespace copshield
