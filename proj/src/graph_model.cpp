#include "copshield/graph_model.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace copshield {

namespace {
Planarization planarize_unchecked(const OnePlaneGraph& g);
} // namespace

const Edge* OnePlaneGraph::edge(int id) const {
    auto it = std::lower_bound(edges.begin(), edges.end(), id,
                               [](const Edge& e, int x) { return e.id < x; });
    if (it == edges.end() || it->id != id) return nullptr;
    return &*it;
}

const Edge& OnePlaneGraph::edgeRef(int id) const {
    const Edge* e = edge(id);
    if (!e) throw Error("unknown edge id " + std::to_string(id));
    return *e;
}

int OnePlaneGraph::addEdge(int u, int v) {
    int id = edges.empty() ? 0 : edges.back().id + 1;
    edges.push_back({id, u, v});
    vertices.insert(u);
    vertices.insert(v);
    return id;
}

int OnePlaneGraph::maxVertexId() const {
    return vertices.empty() ? -1 : *vertices.rbegin();
}

int OnePlaneGraph::crossingOf(int edgeId) const {
    for (std::size_t i = 0; i < crossings.size(); ++i)
        if (crossings[i].first == edgeId || crossings[i].second == edgeId)
            return static_cast<int>(i);
    return -1;
}

std::map<int, std::vector<std::pair<int, int>>> OnePlaneGraph::adjacency() const {
    std::map<int, std::vector<std::pair<int, int>>> adj;
    for (int v : vertices) adj[v];
    for (const Edge& e : edges) {
        adj[e.u].push_back({e.v, e.id});
        adj[e.v].push_back({e.u, e.id});
    }
    for (auto& [v, nb] : adj) std::sort(nb.begin(), nb.end());
    return adj;
}

bool OnePlaneGraph::joined(int a, int b) const {
    for (const Edge& e : edges)
        if ((e.u == a && e.v == b) || (e.u == b && e.v == a)) return true;
    return false;
}

std::array<std::pair<int, int>, 4> Crossing::consecutivePairs() const {
    return {{{au, bu}, {au, bv}, {av, bu}, {av, bv}}};
}

bool Crossing::opposite(int a, int b) const {
    return (a == au && b == av) || (a == av && b == au) ||
           (a == bu && b == bv) || (a == bv && b == bu);
}

Crossing crossing_at(const OnePlaneGraph& g, int index) {
    if (index < 0 || index >= static_cast<int>(g.crossings.size()))
        throw Error("crossing index out of range");
    auto [ea, eb] = g.crossings[index];
    const Edge& a = g.edgeRef(ea);
    const Edge& b = g.edgeRef(eb);
    return Crossing{index, ea, eb, a.u, a.v, b.u, b.v};
}

ValidationReport validate(const OnePlaneGraph& g) {
    ValidationReport rep;
    auto add = [&](std::string m) { rep.issues.push_back(std::move(m)); };

    int prevId = -1;
    for (const Edge& e : g.edges) {
        if (e.id <= prevId) add("edge ids not strictly increasing at edge " + std::to_string(e.id));
        prevId = e.id;
        if (e.u == e.v) add("self-loop at edge " + std::to_string(e.id));
        if (!g.vertices.count(e.u) || !g.vertices.count(e.v))
            add("edge " + std::to_string(e.id) + " references unknown vertex");
    }

    std::map<int, int> crossedCount;
    for (std::size_t i = 0; i < g.crossings.size(); ++i) {
        auto [ea, eb] = g.crossings[i];
        const Edge* a = g.edge(ea);
        const Edge* b = g.edge(eb);
        if (!a || !b) {
            add("crossing " + std::to_string(i) + " references unknown edge");
            continue;
        }
        if (ea == eb) add("crossing " + std::to_string(i) + " pairs an edge with itself");
        ++crossedCount[ea];
        ++crossedCount[eb];
        std::set<int> ends{a->u, a->v, b->u, b->v};
        if (ends.size() != 4) {
            int shared = -1;
            for (int w : {a->u, a->v})
                if (b->incident(w)) shared = w;
            add("crossing edges share endpoint " + std::to_string(shared));
        }
    }
    for (auto [e, c] : crossedCount)
        if (c > 1) add("edge crossed twice: " + std::to_string(e));

    if (g.rotation) {
        // each vertex lists exactly the ends incident to it, once each
        std::map<int, std::multiset<EdgeEnd>> want;
        for (const Edge& e : g.edges) {
            want[e.u].insert({e.id, 0});
            want[e.v].insert({e.id, 1});
        }
        for (int v : g.vertices) {
            auto it = g.rotation->find(v);
            std::multiset<EdgeEnd> got;
            if (it != g.rotation->end())
                got = std::multiset<EdgeEnd>(it->second.begin(), it->second.end());
            if (got != want[v])
                add("rotation at vertex " + std::to_string(v) + " does not list its incident edge ends");
        }
        if (rep.ok()) {
            Planarization p = planarize_unchecked(g);
            if (!euler_ok(p)) add("rotation face trace violates Euler's formula");
        }
    }
    return rep;
}

namespace {

Planarization planarize_unchecked(const OnePlaneGraph& g) {
    Planarization p;
    p.base = g;
    p.dummyBase = g.maxVertexId() + 1;

    auto link = [&](int a, int b, XEdge xe) {
        p.adj[a].push_back({b, xe});
        p.adj[b].push_back({a, xe});
    };
    for (int v : g.vertices) p.adj[v];
    for (const Edge& e : g.edges) {
        int ci = g.crossingOf(e.id);
        if (ci < 0) {
            link(e.u, e.v, {e.id, -1});
        } else {
            int d = p.dummyOf(ci);
            link(e.u, d, {e.id, 0});
            link(d, e.v, {e.id, 1});
        }
    }
    for (auto& [v, nb] : p.adj) std::sort(nb.begin(), nb.end());
    return p;
}

} // namespace

Planarization planarize(const OnePlaneGraph& g) {
    ValidationReport rep = validate(g);
    if (!rep.ok()) throw Error("planarize: invalid graph: " + rep.issues.front());
    return planarize_unchecked(g);
}

std::vector<int> Planarization::edgePath(int edgeId) const {
    const Edge& e = base.edgeRef(edgeId);
    int ci = base.crossingOf(edgeId);
    if (ci < 0) return {e.u, e.v};
    return {e.u, dummyOf(ci), e.v};
}

std::size_t Planarization::vertexCount() const {
    return base.vertices.size() + base.crossings.size();
}

std::size_t Planarization::edgeCount() const {
    return base.edges.size() + base.crossings.size() * 2;
}

std::vector<int> detect_x_crossings(const OnePlaneGraph& g) {
    std::vector<int> out;
    for (std::size_t i = 0; i < g.crossings.size(); ++i) {
        Crossing c = crossing_at(g, static_cast<int>(i));
        bool anyKitePair = false;
        for (auto [a, b] : c.consecutivePairs())
            if (g.joined(a, b)) anyKitePair = true;
        if (!anyKitePair) out.push_back(static_cast<int>(i));
    }
    return out;
}

namespace {

// Insert the new kite edge's ends into the rotation next to the crossing
// half-edges so that {dummy, a, b} bounds a face. Tries the four placements
// and keeps the first one whose face trace stays Eulerian.
void place_kite_in_rotation(OnePlaneGraph& g, int kiteEdgeId, int a, int b,
                            const Crossing& c) {
    if (!g.rotation) return;
    auto endAt = [&](int v, int edgeId) {
        const Edge& e = g.edgeRef(edgeId);
        return EdgeEnd{edgeId, e.u == v ? 0 : 1};
    };
    int crossedAtA = c.edgeA;
    if (g.edgeRef(c.edgeB).incident(a) &&
        !(g.edgeRef(c.edgeA).incident(a)))
        crossedAtA = c.edgeB;
    int crossedAtB = (crossedAtA == c.edgeA) ? c.edgeB : c.edgeA;

    auto& rot = *g.rotation;
    auto placed = [&](int v, int anchorEdge, int offset, EdgeEnd ke) {
        auto& seq = rot[v];
        EdgeEnd anchor = endAt(v, anchorEdge);
        auto it = std::find(seq.begin(), seq.end(), anchor);
        if (it == seq.end()) throw Error("rotation missing crossing half-edge end");
        seq.insert(offset == 0 ? it : std::next(it), ke);
    };
    EdgeEnd keA = endAt(a, kiteEdgeId);
    EdgeEnd keB = endAt(b, kiteEdgeId);
    for (int oa = 0; oa < 2; ++oa) {
        for (int ob = 0; ob < 2; ++ob) {
            Rotation saved = rot;
            placed(a, crossedAtA, oa, keA);
            placed(b, crossedAtB, ob, keB);
            if (euler_ok(planarize(g))) return;
            rot = saved;
        }
    }
    throw Error("could not place kite edge in rotation");
}

} // namespace

KiteResult augment_kites(const OnePlaneGraph& g, bool strict) {
    ValidationReport rep = validate(g);
    if (!rep.ok()) throw Error("augment_kites: invalid graph: " + rep.issues.front());
    std::vector<int> xc = detect_x_crossings(g);
    std::set<int> xset(xc.begin(), xc.end());
    if (strict && !xc.empty()) throw Error("augment_kites: graph has x-crossings");

    KiteResult res;
    res.graph = g;
    for (std::size_t i = 0; i < g.crossings.size(); ++i) {
        if (xset.count(static_cast<int>(i))) continue;
        Crossing c = crossing_at(res.graph, static_cast<int>(i));

        // prefer an existing uncrossed edge between consecutive endpoints,
        // lowest edge id first
        int existing = -1;
        std::pair<int, int> pairJoined{-1, -1};
        for (const Edge& e : res.graph.edges) {
            if (res.graph.isCrossed(e.id)) continue;
            for (auto [x, y] : c.consecutivePairs()) {
                if ((e.u == x && e.v == y) || (e.u == y && e.v == x)) {
                    if (existing < 0) {
                        existing = e.id;
                        pairJoined = {x, y};
                    }
                }
            }
            if (existing >= 0) break;
        }
        if (existing >= 0) {
            res.kites.push_back({static_cast<int>(i), existing, pairJoined, false});
            continue;
        }

        // otherwise insert a parallel uncrossed copy; prefer duplicating a
        // pair already joined by a (crossed) edge, lowest edge id, then the
        // lexicographically least consecutive pair
        std::pair<int, int> pick{-1, -1};
        int bestEdge = -1;
        for (const Edge& e : res.graph.edges) {
            for (auto [x, y] : c.consecutivePairs()) {
                if ((e.u == x && e.v == y) || (e.u == y && e.v == x)) {
                    if (bestEdge < 0) {
                        bestEdge = e.id;
                        pick = {std::min(x, y), std::max(x, y)};
                    }
                }
            }
            if (bestEdge >= 0) break;
        }
        if (bestEdge < 0) {
            std::vector<std::pair<int, int>> cand;
            for (auto [x, y] : c.consecutivePairs())
                cand.push_back({std::min(x, y), std::max(x, y)});
            std::sort(cand.begin(), cand.end());
            pick = cand.front();
        }
        int id = res.graph.addEdge(pick.first, pick.second);
        if (res.graph.rotation)
            place_kite_in_rotation(res.graph, id, pick.first, pick.second, c);
        res.kites.push_back({static_cast<int>(i), id, pick, true});
    }
    return res;
}

bool PlanarSubgraph::subsetOf(const PlanarSubgraph& o) const {
    return std::includes(o.verts.begin(), o.verts.end(), verts.begin(), verts.end()) &&
           std::includes(o.edges.begin(), o.edges.end(), edges.begin(), edges.end());
}

void PlanarSubgraph::unite(const PlanarSubgraph& o) {
    verts.insert(o.verts.begin(), o.verts.end());
    edges.insert(o.edges.begin(), o.edges.end());
}

PlanarSubgraph restrict_subgraph(const Planarization& p, const std::vector<int>& edgeIds) {
    PlanarSubgraph out;
    for (int id : edgeIds) {
        const Edge& e = p.base.edgeRef(id);
        int ci = p.base.crossingOf(id);
        if (ci < 0) {
            out.verts.insert(e.u);
            out.verts.insert(e.v);
            out.edges.insert({id, -1});
        } else {
            int d = p.dummyOf(ci);
            out.verts.insert(e.u);
            out.verts.insert(d);
            out.verts.insert(e.v);
            out.edges.insert({id, 0});
            out.edges.insert({id, 1});
        }
    }
    return out;
}

using json = nlohmann::json;

std::string save_graph(const OnePlaneGraph& g) {
    json j;
    j["vertices"] = json::array();
    for (int v : g.vertices) j["vertices"].push_back(v);
    j["edges"] = json::array();
    for (const Edge& e : g.edges)
        j["edges"].push_back({{"id", e.id}, {"u", e.u}, {"v", e.v}});
    j["crossings"] = json::array();
    for (auto [a, b] : g.crossings) j["crossings"].push_back({a, b});
    if (g.rotation) {
        json rot = json::object();
        for (const auto& [v, seq] : *g.rotation) {
            json s = json::array();
            for (const EdgeEnd& ee : seq) s.push_back({"e", ee.edge, ee.end});
            rot[std::to_string(v)] = s;
        }
        j["rotation"] = rot;
    }
    return j.dump();
}

OnePlaneGraph load_graph(const std::string& text) {
    json j = json::parse(text);
    OnePlaneGraph g;
    for (const auto& v : j.at("vertices")) g.vertices.insert(v.get<int>());
    for (const auto& e : j.at("edges"))
        g.edges.push_back({e.at("id").get<int>(), e.at("u").get<int>(), e.at("v").get<int>()});
    std::sort(g.edges.begin(), g.edges.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
    for (const auto& c : j.at("crossings")) {
        int a = c.at(0).get<int>(), b = c.at(1).get<int>();
        g.crossings.push_back({std::min(a, b), std::max(a, b)});
    }
    std::sort(g.crossings.begin(), g.crossings.end());
    if (j.contains("rotation")) {
        Rotation rot;
        for (const auto& [k, seq] : j.at("rotation").items()) {
            std::vector<EdgeEnd> s;
            for (const auto& ee : seq) s.push_back({ee.at(1).get<int>(), ee.at(2).get<int>()});
            rot[std::stoi(k)] = s;
        }
        g.rotation = std::move(rot);
    }
    return g;
}

OnePlaneGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_graph(buf.str());
}

void save_graph_file(const OnePlaneGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << save_graph(g);
}

std::uint64_t graph_hash(const OnePlaneGraph& g) {
    std::string s = save_graph(g);
    std::uint64_t h = 1469598103934665603ull; // FNV-1a
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

// A dart of G^x: an XEdge together with its tail vertex.
struct Dart {
    int tail = -1, head = -1;
    XEdge xe;
    auto operator<=>(const Dart&) const = default;
};

// Rotation of the planarization: at G-vertices from the base rotation, with
// crossed edge ends replaced by their half-edges; at dummies the forced
// alternating order u, w, v, x for crossing {(u,v), (w,x)}.
std::map<int, std::vector<Dart>> planarization_rotation(const Planarization& p) {
    const OnePlaneGraph& g = p.base;
    if (!g.rotation) throw Error("face tracing requires a rotation system");
    std::map<int, std::vector<Dart>> rot;
    for (int v : g.vertices) {
        auto it = g.rotation->find(v);
        if (it == g.rotation->end()) {
            rot[v];
            continue;
        }
        for (const EdgeEnd& ee : it->second) {
            const Edge& e = g.edgeRef(ee.edge);
            int ci = g.crossingOf(ee.edge);
            if (ci < 0) {
                rot[v].push_back({v, e.other(v), {ee.edge, -1}});
            } else {
                int d = p.dummyOf(ci);
                rot[v].push_back({v, d, {ee.edge, ee.end == 0 ? 0 : 1}});
            }
        }
    }
    for (std::size_t i = 0; i < g.crossings.size(); ++i) {
        Crossing c = crossing_at(g, static_cast<int>(i));
        int d = p.dummyOf(static_cast<int>(i));
        rot[d] = {{d, c.au, {c.edgeA, 0}},
                  {d, c.bu, {c.edgeB, 0}},
                  {d, c.av, {c.edgeA, 1}},
                  {d, c.bv, {c.edgeB, 1}}};
    }
    return rot;
}

} // namespace

std::size_t trace_faces(const Planarization& p) {
    auto rot = planarization_rotation(p);
    // position of each dart in its tail's rotation
    std::map<Dart, std::size_t> pos;
    for (const auto& [v, seq] : rot)
        for (std::size_t i = 0; i < seq.size(); ++i) pos[seq[i]] = i;

    std::set<Dart> seen;
    std::size_t faces = 0;
    for (const auto& [v, seq] : rot) {
        for (const Dart& start : seq) {
            if (seen.count(start)) continue;
            ++faces;
            Dart d = start;
            std::size_t guard = 0;
            do {
                seen.insert(d);
                Dart rev{d.head, d.tail, d.xe};
                auto it = pos.find(rev);
                if (it == pos.end()) throw Error("malformed rotation: missing reverse dart");
                const auto& hseq = rot.at(d.head);
                d = hseq[(it->second + 1) % hseq.size()];
                if (++guard > pos.size() + 1) throw Error("face trace does not close");
            } while (d != start);
        }
    }
    return faces;
}

bool euler_ok(const Planarization& p) {
    // per connected component of G^x: V - E + F == 2
    std::map<int, int> comp;
    int nComp = 0;
    for (const auto& [v, _] : p.adj) {
        if (comp.count(v)) continue;
        std::vector<int> stack{v};
        comp[v] = nComp;
        while (!stack.empty()) {
            int w = stack.back();
            stack.pop_back();
            for (auto [nb, xe] : p.adj.at(w)) {
                if (!comp.count(nb)) {
                    comp[nb] = nComp;
                    stack.push_back(nb);
                }
            }
        }
        ++nComp;
    }

    std::vector<long> V(nComp, 0), E2(nComp, 0), F(nComp, 0);
    for (const auto& [v, nb] : p.adj) {
        V[comp[v]]++;
        E2[comp[v]] += static_cast<long>(nb.size());
    }

    auto rot = planarization_rotation(p);
    std::map<Dart, std::size_t> pos;
    for (const auto& [v, seq] : rot)
        for (std::size_t i = 0; i < seq.size(); ++i) pos[seq[i]] = i;
    std::set<Dart> seen;
    for (const auto& [v, seq] : rot) {
        for (const Dart& start : seq) {
            if (seen.count(start)) continue;
            F[comp[start.tail]]++;
            Dart d = start;
            std::size_t guard = 0;
            do {
                seen.insert(d);
                Dart rev{d.head, d.tail, d.xe};
                auto it = pos.find(rev);
                if (it == pos.end()) return false;
                const auto& hseq = rot.at(d.head);
                d = hseq[(it->second + 1) % hseq.size()];
                if (++guard > pos.size() + 1) return false;
            } while (d != start);
        }
    }
    for (int c = 0; c < nComp; ++c) {
        long e = E2[c] / 2;
        long f = (e == 0) ? 1 : F[c];
        if (V[c] - e + f != 2) return false;
    }
    return true;
}

} // namespace copshield
