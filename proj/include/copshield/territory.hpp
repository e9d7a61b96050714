#pragma once

#include <map>
#include <set>

#include "copshield/graph_model.hpp"

namespace copshield {

// Territories of a guarded subgraph H of G^x. Boundary entries at a G-vertex
// are whole edges of G (part = -1); at a dummy they are half-edges of G^x.
struct TerritoryView {
    PlanarSubgraph H;
    std::set<int> copEdges;          // edge ids of G meeting H
    std::set<int> robberComponent;   // G-vertices of the robber's component
    std::set<int> componentEdges;    // edge ids of G inside the component
    std::map<int, std::vector<XEdge>> boundary; // v in V(H) -> S_H(v)
    int robberAt = -1;
};

// { e in E(G) : the vertices of e^x meet H }
std::set<int> cop_territory(const Planarization& p, const PlanarSubgraph& H);

// Component of G - E(C(H)) containing the robber, with the boundary map
// filled for every vertex of H. Throws if the robber stands on a guarded
// G-vertex of H.
TerritoryView robber_territory(const Planarization& p, const PlanarSubgraph& H, int robberAt);

// True iff every crossing lying fully inside the robber component has an
// uncrossed kite edge inside the component as well.
bool check_no_x(const Planarization& p, const TerritoryView& view);

// R(H) together with S_H(v), as a standalone graph fragment. Half-edges from
// a dummy keep the dummy as a vertex and get fresh edge ids.
OnePlaneGraph extend_with_boundary(const Planarization& p, const TerritoryView& view, int v);

} // namespace copshield
