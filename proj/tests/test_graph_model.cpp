#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "copshield/corpus.hpp"
#include "copshield/graph_model.hpp"

using namespace copshield;

namespace {

bool has_issue(const ValidationReport& r, const std::string& needle) {
    for (const auto& s : r.issues)
        if (s.find(needle) != std::string::npos) return true;
    return false;
}

} // namespace

TEST_CASE("validate accepts K4X") {
    CHECK(validate(named_graph("K4X")).ok());
}

TEST_CASE("validate flags a crossing whose edges share an endpoint") {
    OnePlaneGraph g = named_graph("K4X");
    // (1,2) is edge 0, (1,3) is edge 4
    g.crossings.push_back({0, 4});
    CHECK(has_issue(validate(g), "share endpoint 1"));
}

TEST_CASE("validate flags an edge listed in two crossings") {
    OnePlaneGraph g = named_graph("K4X");
    g.crossings.push_back({0, 4}); // edge 4 = (1,3) already crossed
    CHECK(has_issue(validate(g), "crossed twice"));
}

TEST_CASE("validate flags self-loops and unknown references") {
    OnePlaneGraph g;
    g.vertices = {0, 1};
    g.addEdge(0, 1);
    g.edges.push_back({1, 0, 0});
    g.edges.push_back({2, 0, 7});
    CHECK(has_issue(validate(g), "self-loop"));
    CHECK(has_issue(validate(g), "unknown vertex"));
}

TEST_CASE("planarize K4X: 5 vertices, 8 edges") {
    Planarization p = planarize(named_graph("K4X"));
    CHECK(p.vertexCount() == 5);
    CHECK(p.edgeCount() == 8);
    int d = p.dummyOf(0);
    CHECK(p.isDummy(d));
    CHECK(p.adj.at(d).size() == 4);
}

TEST_CASE("planarize is the identity on a crossing-free grid") {
    OnePlaneGraph g = named_graph("GRID3x3");
    Planarization p = planarize(g);
    CHECK(p.vertexCount() == g.vertices.size());
    CHECK(p.edgeCount() == g.edges.size());
    for (const Edge& e : g.edges) CHECK(p.edgePath(e.id) == std::vector<int>{e.u, e.v});
}

TEST_CASE("planarize FIG1: exactly 4 dummy vertices") {
    OnePlaneGraph g = named_graph("FIG1");
    CHECK(g.crossings.size() == 4);
    Planarization p = planarize(g);
    CHECK(p.vertexCount() == g.vertices.size() + 4);
    for (int i = 0; i < 4; ++i) CHECK(p.adj.at(p.dummyOf(i)).size() == 4);
}

TEST_CASE("crossing growth counts") {
    for (const char* id : {"K4X", "FIG1", "FIG2", "FIG3"}) {
        OnePlaneGraph g = named_graph(id);
        Planarization p = planarize(g);
        CHECK(p.vertexCount() == g.vertices.size() + g.crossings.size());
        CHECK(p.edgeCount() == g.edges.size() + 2 * g.crossings.size());
    }
}

TEST_CASE("detect_x_crossings") {
    CHECK(detect_x_crossings(named_graph("K4X")).empty());
    CHECK(detect_x_crossings(named_graph("FIG1")).empty());

    OnePlaneGraph bare;
    for (int v = 1; v <= 4; ++v) bare.vertices.insert(v);
    int e1 = bare.addEdge(1, 3);
    int e2 = bare.addEdge(2, 4);
    bare.crossings.push_back({e1, e2});
    CHECK(detect_x_crossings(bare) == std::vector<int>{0});
}

TEST_CASE("augment_kites on K4X designates an existing uncrossed edge") {
    KiteResult r = augment_kites(named_graph("K4X"));
    REQUIRE(r.kites.size() == 1);
    CHECK_FALSE(r.kites[0].inserted);
    CHECK(r.kites[0].kiteEdge == 0); // lowest-id candidate (1,2)
    CHECK(r.graph.edges.size() == 6);
}

TEST_CASE("augment_kites on FIG1 duplicates (a,c) and (c,d), shares (f,g)") {
    enum { a, b, c, d, e, f, g, h };
    OnePlaneGraph g1 = named_graph("FIG1");
    KiteResult r = augment_kites(g1);
    REQUIRE(r.kites.size() == 4);
    CHECK(r.kites[0].inserted);
    CHECK(r.kites[0].pairJoined == std::pair<int, int>{a, c});
    CHECK(r.kites[1].inserted);
    CHECK(r.kites[1].pairJoined == std::pair<int, int>{c, d});
    CHECK_FALSE(r.kites[2].inserted);
    CHECK_FALSE(r.kites[3].inserted);
    CHECK(r.kites[2].kiteEdge == r.kites[3].kiteEdge); // (f,g) serves both
    CHECK(r.graph.edges.size() == g1.edges.size() + 2);
    for (const KiteRecord& k : r.kites) CHECK_FALSE(r.graph.isCrossed(k.kiteEdge));
}

TEST_CASE("augment_kites inserts an uncrossed copy when the only candidate is crossed") {
    // 7-vertex instance: crossing {(0,2),(1,3)} whose only consecutive edge
    // (0,1) is itself crossed by (5,6)
    OnePlaneGraph g;
    for (int v = 0; v <= 6; ++v) g.vertices.insert(v);
    int a = g.addEdge(0, 2);
    int b = g.addEdge(1, 3);
    int c = g.addEdge(0, 1);
    int d = g.addEdge(5, 6);
    g.addEdge(0, 5);
    g.addEdge(1, 6);
    g.addEdge(3, 4);
    g.crossings = {{a, b}, {c, d}};
    REQUIRE(validate(g).ok());
    REQUIRE(detect_x_crossings(g).empty());
    KiteResult r = augment_kites(g);
    for (const KiteRecord& k : r.kites) CHECK_FALSE(r.graph.isCrossed(k.kiteEdge));
    CHECK(r.kites[0].inserted);
    CHECK(r.kites[0].pairJoined == std::pair<int, int>{0, 1});
}

TEST_CASE("augment_kites rejects x-crossings in strict mode") {
    OnePlaneGraph g = build_recipe("xghat:n=4:gamma=1");
    CHECK_THROWS_AS(augment_kites(g), Error);
    CHECK_NOTHROW(augment_kites(g, false));
}

TEST_CASE("restrict_subgraph") {
    OnePlaneGraph g = named_graph("K4X");
    Planarization p = planarize(g);

    PlanarSubgraph single = restrict_subgraph(p, {0}); // uncrossed (1,2)
    CHECK(single.verts == std::set<int>{1, 2});
    CHECK(single.edges == std::set<XEdge>{{0, -1}});

    PlanarSubgraph crossed = restrict_subgraph(p, {4}); // (1,3)
    CHECK(crossed.verts == std::set<int>{1, p.dummyOf(0), 3});
    CHECK(crossed.edges.size() == 2);

    PlanarSubgraph star = restrict_subgraph(p, {4, 5});
    CHECK(star.verts.size() == 5);
    CHECK(star.edges.size() == 4);

    std::vector<int> all;
    for (const Edge& e : g.edges) all.push_back(e.id);
    PlanarSubgraph whole = restrict_subgraph(p, all);
    CHECK(whole.verts.size() == p.vertexCount());
    CHECK(whole.edges.size() == p.edgeCount());
}

TEST_CASE("json round trip is byte-stable") {
    for (const char* id : {"K4X", "FIG1", "FIG2", "PETERSEN"}) {
        OnePlaneGraph g = named_graph(id);
        std::string s1 = save_graph(g);
        std::string s2 = save_graph(load_graph(s1));
        CHECK(s1 == s2);
        CHECK(graph_hash(g) == graph_hash(load_graph(s1)));
    }
    OnePlaneGraph rotated = build_recipe("ghat:n=12:seed=3");
    REQUIRE(rotated.rotation.has_value());
    std::string s1 = save_graph(rotated);
    CHECK(s1 == save_graph(load_graph(s1)));
}

TEST_CASE("face tracing satisfies Euler on generated graphs") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        OnePlaneGraph g = random_in_ghat(15, seed);
        REQUIRE(g.rotation.has_value());
        Planarization p = planarize(g);
        CHECK(euler_ok(p));
        CHECK(trace_faces(p) == 2 + p.edgeCount() - p.vertexCount());
    }
}

TEST_CASE("validate rejects a scrambled rotation") {
    OnePlaneGraph g = random_in_ghat(9, 1);
    auto& seq = (*g.rotation)[0];
    REQUIRE(seq.size() >= 2);
    std::swap(seq[0], seq[1]);
    // swapping two ends at a corner either breaks Euler or keeps a valid
    // re-embedding; accept both but require determinism of the verdict
    ValidationReport r1 = validate(g);
    ValidationReport r2 = validate(g);
    CHECK(r1.issues == r2.issues);
}
