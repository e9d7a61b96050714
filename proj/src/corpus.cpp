#include "copshield/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace copshield {

namespace {

OnePlaneGraph k4x() {
    OnePlaneGraph g;
    for (int v = 1; v <= 4; ++v) g.vertices.insert(v);
    g.addEdge(1, 2); // 0
    g.addEdge(2, 3); // 1
    g.addEdge(3, 4); // 2
    g.addEdge(4, 1); // 3
    int d1 = g.addEdge(1, 3);
    int d2 = g.addEdge(2, 4);
    g.crossings.push_back({d1, d2});
    return g;
}

// Vertices a..h as 0..7. Crossings: {(a,b),(c,d)}, {(a,c),(e,d)},
// {(e,g),(a,f)}, {(g,h),(f,c)}. The uncrossed edge (f,g) serves as kite for
// the last two crossings.
OnePlaneGraph fig1() {
    enum { a, b, c, d, e, f, g, h };
    OnePlaneGraph gr;
    for (int v = 0; v < 8; ++v) gr.vertices.insert(v);
    int ab = gr.addEdge(a, b);
    int cd = gr.addEdge(c, d);
    int ac = gr.addEdge(a, c);
    int ed = gr.addEdge(e, d);
    int eg = gr.addEdge(e, g);
    int af = gr.addEdge(a, f);
    int gh = gr.addEdge(g, h);
    int fc = gr.addEdge(f, c);
    gr.addEdge(f, g);
    gr.crossings = {{ab, cd}, {ac, ed}, {eg, af}, {gh, fc}};
    return gr;
}

OnePlaneGraph fig2() {
    // fig1 with its two missing kites inserted as uncrossed parallel copies
    return augment_kites(fig1()).graph;
}

// A path (u, v) then across the crossing {(v,w),(u,c)} to w, with the robber
// side a..e hanging off: S_H(u)={(u,a),(u,b)}, S_H(v)={(v,c)},
// S_H(w)={(w,d),(w,e)} even though (u,c) is an edge.
OnePlaneGraph fig3() {
    enum { u, v, w, a, b, c, d, e };
    OnePlaneGraph gr;
    for (int x = 0; x < 8; ++x) gr.vertices.insert(x);
    gr.addEdge(u, v);
    int vw = gr.addEdge(v, w);
    int uc = gr.addEdge(u, c);
    gr.addEdge(u, a);
    gr.addEdge(u, b);
    gr.addEdge(v, c);
    gr.addEdge(w, d);
    gr.addEdge(w, e);
    gr.addEdge(a, b);
    gr.addEdge(a, c);
    gr.addEdge(c, d);
    gr.addEdge(d, e);
    gr.crossings = {{std::min(vw, uc), std::max(vw, uc)}};
    return gr;
}

OnePlaneGraph petersen() {
    OnePlaneGraph g;
    for (int v = 0; v < 10; ++v) g.vertices.insert(v);
    for (int i = 0; i < 5; ++i) g.addEdge(i, (i + 1) % 5);       // outer C5
    for (int i = 0; i < 5; ++i) g.addEdge(5 + i, 5 + (i + 2) % 5); // inner star
    for (int i = 0; i < 5; ++i) g.addEdge(i, 5 + i);             // spokes
    return g;
}

struct GridScaffold {
    OnePlaneGraph g;
    int rows = 0, cols = 0;
    // horizontal edge (i,j)-(i,j+1) and vertical edge (i,j)-(i+1,j) ids
    std::map<std::pair<int, int>, int> hEdge, vEdge;
    int at(int i, int j) const { return i * cols + j; }
};

// rows x cols grid with a clockwise rotation (up, right, down, left).
GridScaffold make_grid(int rows, int cols) {
    GridScaffold s;
    s.rows = rows;
    s.cols = cols;
    for (int v = 0; v < rows * cols; ++v) s.g.vertices.insert(v);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j + 1 < cols; ++j)
            s.hEdge[{i, j}] = s.g.addEdge(s.at(i, j), s.at(i, j + 1));
    for (int i = 0; i + 1 < rows; ++i)
        for (int j = 0; j < cols; ++j)
            s.vEdge[{i, j}] = s.g.addEdge(s.at(i, j), s.at(i + 1, j));

    Rotation rot;
    auto endOf = [&](int edgeId, int v) {
        const Edge& e = s.g.edgeRef(edgeId);
        return EdgeEnd{edgeId, e.u == v ? 0 : 1};
    };
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            int v = s.at(i, j);
            std::vector<EdgeEnd>& seq = rot[v];
            if (i > 0) seq.push_back(endOf(s.vEdge[{i - 1, j}], v));       // up
            if (j + 1 < cols) seq.push_back(endOf(s.hEdge[{i, j}], v));    // right
            if (i + 1 < rows) seq.push_back(endOf(s.vEdge[{i, j}], v));    // down
            if (j > 0) seq.push_back(endOf(s.hEdge[{i, j - 1}], v));       // left
        }
    }
    s.g.rotation = std::move(rot);
    return s;
}

// Insert edge end `ee` into v's rotation directly after `anchor`.
void insert_after(OnePlaneGraph& g, int v, EdgeEnd anchor, EdgeEnd ee) {
    auto& seq = (*g.rotation)[v];
    auto it = std::find(seq.begin(), seq.end(), anchor);
    if (it == seq.end()) throw Error("rotation anchor missing");
    seq.insert(std::next(it), ee);
}

EdgeEnd end_of(const OnePlaneGraph& g, int edgeId, int v) {
    const Edge& e = g.edgeRef(edgeId);
    return EdgeEnd{edgeId, e.u == v ? 0 : 1};
}

// Add the crossing pair of diagonals inside the quad face with NW corner
// (i,j). Diagonal 1 runs NW-SE, diagonal 2 NE-SW, so the dummy's forced
// rotation (NW, NE, SE, SW) is clockwise.
void add_face_crossing(GridScaffold& s, int i, int j) {
    OnePlaneGraph& g = s.g;
    int nw = s.at(i, j), ne = s.at(i, j + 1), sw = s.at(i + 1, j), se = s.at(i + 1, j + 1);
    int d1 = g.addEdge(nw, se);
    int d2 = g.addEdge(ne, sw);
    g.crossings.push_back({d1, d2});
    // each end goes into the clockwise gap that opens into this face
    insert_after(g, nw, end_of(g, s.hEdge[{i, j}], nw), end_of(g, d1, nw));     // after right
    insert_after(g, se, end_of(g, s.hEdge[{i + 1, j}], se), end_of(g, d1, se)); // after left
    insert_after(g, ne, end_of(g, s.vEdge[{i, j + 1}], ne), end_of(g, d2, ne)); // after down
    insert_after(g, sw, end_of(g, s.vEdge[{i, j}], sw), end_of(g, d2, sw));     // after up
}

// Crossed faces: the first `disjointCross` are chosen pairwise
// vertex-disjoint (greedy over a shuffled face list), then up to `extraCross`
// more wherever they fit.
GridScaffold ghat_scaffold(int n, std::uint64_t seed, int disjointCross, int extraCross,
                           std::vector<std::pair<int, int>>& crossedFaces) {
    if (n < 4) throw Error("need n >= 4");
    int rows = std::max(2, static_cast<int>(std::sqrt(static_cast<double>(n))));
    int cols = std::max(2, n / rows);
    while (rows * cols > n) (cols > 2 ? cols : rows)--;
    GridScaffold s = make_grid(rows, cols);

    std::mt19937_64 rng(seed);
    std::vector<std::pair<int, int>> faces;
    for (int i = 0; i + 1 < rows; ++i)
        for (int j = 0; j + 1 < cols; ++j) faces.push_back({i, j});
    std::shuffle(faces.begin(), faces.end(), rng);

    crossedFaces.clear();
    std::set<int> used;
    for (auto [i, j] : faces) {
        if (static_cast<int>(crossedFaces.size()) >= disjointCross) break;
        std::array<int, 4> corners{s.at(i, j), s.at(i, j + 1), s.at(i + 1, j), s.at(i + 1, j + 1)};
        if (std::any_of(corners.begin(), corners.end(), [&](int c) { return used.count(c) > 0; }))
            continue;
        used.insert(corners.begin(), corners.end());
        crossedFaces.push_back({i, j});
        add_face_crossing(s, i, j);
    }
    if (static_cast<int>(crossedFaces.size()) < disjointCross)
        throw Error("n too small for the requested crossings");
    for (auto [i, j] : faces) {
        if (extraCross <= 0) break;
        if (std::find(crossedFaces.begin(), crossedFaces.end(), std::make_pair(i, j)) !=
            crossedFaces.end())
            continue;
        add_face_crossing(s, i, j);
        --extraCross;
    }

    // pendants to reach n vertices
    int base = rows * cols;
    for (int v = base; v < n; ++v) {
        int host = static_cast<int>(rng() % base);
        s.g.vertices.insert(v);
        int id = s.g.addEdge(host, v);
        (*s.g.rotation)[v] = {end_of(s.g, id, v)};
        auto& seq = (*s.g.rotation)[host];
        std::size_t pos = rng() % (seq.size());
        seq.insert(seq.begin() + static_cast<long>(pos), end_of(s.g, id, host));
    }
    return s;
}

} // namespace

OnePlaneGraph random_in_ghat(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::vector<std::pair<int, int>> faces;
    GridScaffold s = ghat_scaffold(n, seed, 1, static_cast<int>(rng() % 3), faces);
    ValidationReport rep = validate(s.g);
    if (!rep.ok()) throw Error("generator bug: " + rep.issues.front());
    return s.g;
}

OnePlaneGraph random_with_x(int n, int gamma, std::uint64_t seed) {
    if (gamma < 1) throw Error("need gamma >= 1");
    if (n == 4 && gamma == 1) {
        // the bare crossing
        OnePlaneGraph g;
        for (int v = 0; v < 4; ++v) g.vertices.insert(v);
        int d1 = g.addEdge(0, 2);
        int d2 = g.addEdge(1, 3);
        g.crossings.push_back({d1, d2});
        return g;
    }
    // gamma vertex-disjoint quad faces get crossed and lose all four sides
    std::vector<std::pair<int, int>> chosen;
    GridScaffold s = [&] {
        try {
            return ghat_scaffold(n, seed, gamma, 1, chosen);
        } catch (const Error&) {
            throw Error("n too small for gamma");
        }
    }();

    std::set<int> drop;
    for (auto [i, j] : chosen) {
        drop.insert(s.hEdge[{i, j}]);
        drop.insert(s.hEdge[{i + 1, j}]);
        drop.insert(s.vEdge[{i, j}]);
        drop.insert(s.vEdge[{i, j + 1}]);
    }
    OnePlaneGraph g = s.g;
    std::erase_if(g.edges, [&](const Edge& e) { return drop.count(e.id) > 0; });
    for (auto& [v, seq] : *g.rotation)
        std::erase_if(seq, [&](const EdgeEnd& ee) { return drop.count(ee.edge) > 0; });

    // surplus crossed faces keep their kite sides; verify the count
    ValidationReport rep = validate(g);
    if (!rep.ok()) throw Error("generator bug: " + rep.issues.front());
    if (detect_x_crossings(g).size() != static_cast<std::size_t>(gamma))
        throw Error("generator bug: wrong x-crossing count");
    return g;
}

OnePlaneGraph cycle_graph(int n) {
    if (n < 3) throw Error("cycle needs n >= 3");
    OnePlaneGraph g;
    for (int v = 0; v < n; ++v) g.vertices.insert(v);
    for (int v = 0; v < n; ++v) g.addEdge(v, (v + 1) % n);
    return g;
}

OnePlaneGraph path_graph(int n) {
    if (n < 1) throw Error("path needs n >= 1");
    OnePlaneGraph g;
    for (int v = 0; v < n; ++v) g.vertices.insert(v);
    for (int v = 0; v + 1 < n; ++v) g.addEdge(v, v + 1);
    return g;
}

OnePlaneGraph complete_graph(int n) {
    if (n < 1) throw Error("complete graph needs n >= 1");
    OnePlaneGraph g;
    for (int v = 0; v < n; ++v) g.vertices.insert(v);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.addEdge(u, v);
    return g;
}

OnePlaneGraph random_tree(int n, std::uint64_t seed) {
    if (n < 1) throw Error("tree needs n >= 1");
    OnePlaneGraph g;
    g.vertices.insert(0);
    std::mt19937_64 rng(seed);
    for (int v = 1; v < n; ++v) {
        int parent = static_cast<int>(rng() % v);
        g.vertices.insert(v);
        g.addEdge(parent, v);
    }
    return g;
}

OnePlaneGraph random_chordal(int n, std::uint64_t seed) {
    // every vertex joins a clique of earlier vertices (parent, or parent +
    // grandparent), so the graph is chordal by construction
    if (n < 1) throw Error("chordal needs n >= 1");
    OnePlaneGraph g;
    g.vertices.insert(0);
    std::vector<int> parent(n, -1);
    std::mt19937_64 rng(seed);
    for (int v = 1; v < n; ++v) {
        int p = static_cast<int>(rng() % v);
        parent[v] = p;
        g.vertices.insert(v);
        g.addEdge(p, v);
        if (parent[p] >= 0 && (rng() & 1)) g.addEdge(parent[p], v);
    }
    return g;
}

OnePlaneGraph named_graph(const std::string& id) {
    if (id == "K4X") return k4x();
    if (id == "FIG1") return fig1();
    if (id == "FIG2") return fig2();
    if (id == "FIG3") return fig3();
    if (id == "PETERSEN") return petersen();
    if (id.rfind("CYCLE", 0) == 0) return cycle_graph(std::stoi(id.substr(5)));
    if (id.rfind("PATH", 0) == 0) return path_graph(std::stoi(id.substr(4)));
    if (id.rfind("K", 0) == 0 && id.size() > 1 && std::isdigit(static_cast<unsigned char>(id[1])))
        return complete_graph(std::stoi(id.substr(1)));
    if (id.rfind("GRID", 0) == 0) {
        auto x = id.find('x');
        if (x != std::string::npos)
            return make_grid(std::stoi(id.substr(4, x - 4)), std::stoi(id.substr(x + 1))).g;
    }
    throw Error("unknown named graph: " + id);
}

Recipe parse_recipe(const std::string& text) {
    Recipe r;
    std::stringstream ss(text);
    std::string tok;
    if (!std::getline(ss, tok, ':')) throw Error("empty recipe");
    r.kind = tok;
    while (std::getline(ss, tok, ':')) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) {
            if (r.kind == "named" && r.id.empty()) {
                r.id = tok;
                continue;
            }
            throw Error("bad recipe token: " + tok);
        }
        std::string k = tok.substr(0, eq), v = tok.substr(eq + 1);
        if (k == "n") r.n = std::stoi(v);
        else if (k == "gamma") r.gamma = std::stoi(v);
        else if (k == "seed") r.seed = std::stoull(v);
        else if (k == "rows") r.rows = std::stoi(v);
        else if (k == "cols") r.cols = std::stoi(v);
        else if (k == "id") r.id = v;
        else throw Error("unknown recipe key: " + k);
    }
    return r;
}

OnePlaneGraph build_recipe(const Recipe& r) {
    if (r.kind == "named") return named_graph(r.id);
    if (r.kind == "ghat") return random_in_ghat(r.n, r.seed);
    if (r.kind == "xghat") return random_with_x(r.n, r.gamma, r.seed);
    if (r.kind == "chordal") return random_chordal(r.n, r.seed);
    if (r.kind == "cycle") return cycle_graph(r.n);
    if (r.kind == "path") return path_graph(r.n);
    if (r.kind == "tree") return random_tree(r.n, r.seed);
    if (r.kind == "complete") return complete_graph(r.n);
    if (r.kind == "grid") return make_grid(r.rows ? r.rows : r.n, r.cols ? r.cols : r.n).g;
    throw Error("unknown recipe kind: " + r.kind);
}

OnePlaneGraph build_recipe(const std::string& text) {
    return build_recipe(parse_recipe(text));
}

} // namespace copshield
