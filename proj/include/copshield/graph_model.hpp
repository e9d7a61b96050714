#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace copshield {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Edge {
    int id = -1;
    int u = -1;
    int v = -1;

    int other(int w) const { return w == u ? v : u; }
    bool incident(int w) const { return w == u || w == v; }
};

// One end of an edge: end 0 sits at u, end 1 at v.
struct EdgeEnd {
    int edge = -1;
    int end = 0;
    auto operator<=>(const EdgeEnd&) const = default;
};

using Rotation = std::map<int, std::vector<EdgeEnd>>;

// A 1-plane multigraph given combinatorially: the crossing pairs are part of
// the input (the embedding is declared, not computed).
struct OnePlaneGraph {
    std::set<int> vertices;
    std::vector<Edge> edges;                    // sorted by id
    std::vector<std::pair<int, int>> crossings; // normalized (low edge id, high edge id)
    std::optional<Rotation> rotation;

    const Edge* edge(int id) const;
    const Edge& edgeRef(int id) const;
    int addEdge(int u, int v); // returns new edge id (max + 1)
    int maxVertexId() const;

    // crossing index for an edge id, or -1 if uncrossed
    int crossingOf(int edgeId) const;
    bool isCrossed(int edgeId) const { return crossingOf(edgeId) >= 0; }

    // v -> sorted (neighbor, edge id); parallel edges appear once per edge
    std::map<int, std::vector<std::pair<int, int>>> adjacency() const;

    // true if some edge (crossed or not) joins a and b
    bool joined(int a, int b) const;
};

struct ValidationReport {
    std::vector<std::string> issues;
    bool ok() const { return issues.empty(); }
};

ValidationReport validate(const OnePlaneGraph& g);

// Resolved view of one crossing.
struct Crossing {
    int index = -1;
    int edgeA = -1, edgeB = -1; // edgeA < edgeB
    int au = -1, av = -1;       // endpoints of edgeA
    int bu = -1, bv = -1;       // endpoints of edgeB
    std::array<int, 4> endpoints() const { return {au, av, bu, bv}; }
    // the four consecutive endpoint pairs (one from each edge)
    std::array<std::pair<int, int>, 4> consecutivePairs() const;
    bool opposite(int a, int b) const;
};

Crossing crossing_at(const OnePlaneGraph& g, int index);

// Edge of the planarization: part -1 is a whole (uncrossed) edge, part 0 the
// half from u to the dummy, part 1 the half from the dummy to v.
struct XEdge {
    int edge = -1;
    int part = -1;
    auto operator<=>(const XEdge&) const = default;
};

struct Planarization {
    OnePlaneGraph base; // owning copy
    int dummyBase = 0;  // dummy of crossing i has vertex id dummyBase + i
    std::map<int, std::vector<std::pair<int, XEdge>>> adj; // G^x adjacency, sorted

    bool isDummy(int v) const { return v >= dummyBase; }
    int dummyOf(int crossingIndex) const { return dummyBase + crossingIndex; }
    int crossingOfDummy(int v) const { return v - dummyBase; }

    // vertices of e^x in path order: {u, v} or {u, d, v}
    std::vector<int> edgePath(int edgeId) const;
    // all vertices of e^x (same set as edgePath)
    std::vector<int> edgeVerts(int edgeId) const { return edgePath(edgeId); }

    std::size_t vertexCount() const;
    std::size_t edgeCount() const;
};

Planarization planarize(const OnePlaneGraph& g);

// crossings with no edge joining any consecutive endpoint pair
std::vector<int> detect_x_crossings(const OnePlaneGraph& g);

struct KiteRecord {
    int crossing = -1;
    int kiteEdge = -1;
    std::pair<int, int> pairJoined{-1, -1};
    bool inserted = false;
};

struct KiteResult {
    OnePlaneGraph graph;
    std::vector<KiteRecord> kites;
};

// Designates or inserts an uncrossed kite edge at every non-x crossing.
// strict: throw if an x-crossing is present.
KiteResult augment_kites(const OnePlaneGraph& g, bool strict = true);

// A subgraph of G^x: vertex ids plus XEdge keys.
struct PlanarSubgraph {
    std::set<int> verts;
    std::set<XEdge> edges;

    bool containsVertex(int v) const { return verts.count(v) > 0; }
    bool subsetOf(const PlanarSubgraph& o) const;
    void unite(const PlanarSubgraph& o);
    std::size_t weight() const { return verts.size() + edges.size(); }
    bool operator==(const PlanarSubgraph&) const = default;
};

// The sub-drawing H^x of an edge-induced subgraph H of G: a dummy is inserted
// on every edge of H crossed by any edge of G.
PlanarSubgraph restrict_subgraph(const Planarization& p, const std::vector<int>& edgeIds);

// JSON interchange (canonical key order, byte-stable round trip)
std::string save_graph(const OnePlaneGraph& g);
OnePlaneGraph load_graph(const std::string& text);
OnePlaneGraph load_graph_file(const std::string& path);
void save_graph_file(const OnePlaneGraph& g, const std::string& path);

std::uint64_t graph_hash(const OnePlaneGraph& g);

// Face count of the planarization by rotation face tracing; requires rotation.
// Throws if the rotation is malformed.
std::size_t trace_faces(const Planarization& p);

// V - E + F == 1 + #components, counting the shared outer face once per
// component (i.e. V - E + F == 2 for connected graphs).
bool euler_ok(const Planarization& p);

} // namespace copshield
