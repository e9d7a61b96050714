#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "copshield/corpus.hpp"
#include "copshield/path_guard.hpp"
#include "copshield/robbers.hpp"

using namespace copshield;

namespace {

GameState state_at(std::vector<int> cops, int robber) {
    GameState s;
    s.cops = std::move(cops);
    s.robber = robber;
    s.phase = GameState::Phase::CopsTurn;
    s.round = 2;
    return s;
}

// applies one guard turn to the state; returns the events
std::vector<TraceEvent> advance(PathGuard& guard, GameState& s) {
    std::vector<int> moves = s.cops;
    auto ev = guard.step(s, moves);
    s.cops = moves;
    return ev;
}

std::vector<int> range_path(int m) {
    std::vector<int> p;
    for (int i = 0; i <= m; ++i) p.push_back(i);
    return p;
}

} // namespace

TEST_CASE("shadow index: on-path robber, clamping, C6 antipode") {
    OnePlaneGraph c6 = named_graph("CYCLE6");
    PathGuard g(c6, c6, {0, 1, 2, 3}, {0, 1, 2, 3, 4});
    for (int i = 0; i < 4; ++i) CHECK(g.shadowIndex(i) == i);
    CHECK(g.shadowIndex(3) == 3); // antipode of p0
    CHECK(g.shadowIndex(5) == 1); // d(0,5) = 1 around the back

    OnePlaneGraph p9 = path_graph(9);
    PathGuard g2(p9, p9, {0, 1, 2, 3, 4}, {0, 1, 2, 3, 4});
    CHECK(g2.shadowIndex(8) == 4); // distance m+4 clamps to m
}

TEST_CASE("a non-shortest path is rejected") {
    OnePlaneGraph c6 = named_graph("CYCLE6");
    CHECK_THROWS_AS(PathGuard(c6, c6, {0, 1, 2, 3, 4, 5}, {0, 1, 2, 3, 4}), Error);
}

TEST_CASE("fan-out from an off-shadow position") {
    // C12: guard 0..6, robber walks the far arc so the shadow drops 5 -> 3
    OnePlaneGraph c12 = cycle_graph(12);
    PathGuard guard(c12, c12, range_path(6), {0, 1, 2, 3, 4});
    GameState s = state_at(std::vector<int>(5, 0), 7); // shadow = d(0,7) = 5
    for (int t = 0; t < 8; ++t) advance(guard, s);
    CHECK(guard.active());
    CHECK(s.cops[0] == 5); // U* on the shadow
    CHECK(s.cops[1] == 4);
    CHECK(s.cops[2] == 6);
    CHECK(s.cops[3] == 3);
    CHECK(s.cops[4] == 6); // +2 clamped to m

    s.robber = 8; // shadow 4
    advance(guard, s);
    CHECK(s.cops[0] == 4);
    s.robber = 9; // shadow 3
    advance(guard, s);
    CHECK((std::vector<int>{s.cops[0], s.cops[1], s.cops[2], s.cops[3], s.cops[4]}) ==
          std::vector<int>{3, 2, 4, 1, 5});
    CHECK(guard.active());
}

TEST_CASE("the shadow cop syncs within the stabilization potential") {
    // exhaustive robber walks on C8 against a guard of the path 0..4: until
    // the shadow cop first reaches the shadow, the potential strictly drops
    // every full round; afterwards it re-syncs on every cops' turn
    OnePlaneGraph c8 = cycle_graph(8);
    auto adj = c8.adjacency();
    struct Node {
        PathGuard guard;
        GameState s;
        int phiBefore;
        int depth;
        bool synced;
    };
    PathGuard base(c8, c8, range_path(4), {0, 1, 2, 3, 4});
    GameState s0 = state_at(std::vector<int>(5, 0), 6);
    std::vector<Node> stack{{base, s0, base.potential(s0), 0, false}};
    int explored = 0;
    while (!stack.empty()) {
        Node n = std::move(stack.back());
        stack.pop_back();
        ++explored;
        advance(n.guard, n.s);
        int shadow = n.guard.shadowIndex(n.s.robber);
        bool syncedNow = n.s.cops[0] == n.guard.path()[static_cast<std::size_t>(shadow)];
        if (n.synced) CHECK(syncedNow); // sync persists once reached
        if (n.depth >= 6) continue;
        for (auto [r, eid] : adj[n.s.robber]) {
            Node next = n;
            next.s.robber = r;
            if (next.s.copAt(r)) continue; // skip suicide moves
            int phi = next.guard.potential(next.s);
            if (!n.synced && !syncedNow) CHECK(phi < n.phiBefore);
            next.phiBefore = phi;
            next.depth = n.depth + 1;
            next.synced = n.synced || syncedNow;
            stack.push_back(next);
        }
    }
    CHECK(explored > 10);
}

TEST_CASE("activation despite an oscillating robber") {
    OnePlaneGraph c12 = cycle_graph(12);
    PathGuard guard(c12, c12, range_path(6), {0, 1, 2, 3, 4});
    GameState s = state_at(std::vector<int>(5, 0), 8);
    int osc[2] = {8, 9};
    int t = 0;
    for (; t < 40 && !guard.active(); ++t) {
        advance(guard, s);
        s.robber = osc[t % 2];
    }
    CHECK(guard.active());
}

TEST_CASE("activation happens and is announced") {
    OnePlaneGraph c8 = cycle_graph(8);
    PathGuard guard(c8, c8, range_path(4), {0, 1, 2, 3, 4});
    GameState s = state_at(std::vector<int>(5, 0), 6);
    bool announced = false;
    for (int t = 0; t < 12 && !guard.active(); ++t)
        for (const TraceEvent& e : advance(guard, s))
            if (e.type == "guard-activated") announced = true;
    CHECK(guard.active());
    CHECK(announced);
}

TEST_CASE("capture on landing: robber entering the path is adjacent to a cop") {
    // 2-ply exhaustive on C8 after activation
    OnePlaneGraph c8 = cycle_graph(8);
    auto adj = c8.adjacency();
    PathGuard guard(c8, c8, range_path(4), {0, 1, 2, 3, 4});
    GameState s = state_at(std::vector<int>(5, 0), 6);
    for (int t = 0; t < 12 && !guard.active(); ++t) advance(guard, s);
    REQUIRE(guard.active());

    struct Node {
        PathGuard guard;
        GameState s;
        int depth;
    };
    std::vector<Node> stack{{guard, s, 0}};
    while (!stack.empty()) {
        Node n = std::move(stack.back());
        stack.pop_back();
        for (auto [r, eid] : adj[n.s.robber]) {
            Node next = n;
            next.s.robber = r;
            bool onPath = std::find(guard.path().begin(), guard.path().end(), r) !=
                          guard.path().end();
            if (onPath) {
                // some squad cop on or adjacent: the pounce finishes it
                CHECK(pounce_cop(c8, next.s) >= 0);
                continue;
            }
            if (next.s.copAt(r)) continue;
            advance(next.guard, next.s);
            next.depth = n.depth + 1;
            if (next.depth < 4) stack.push_back(next);
        }
    }
}

TEST_CASE("stationary cop guards the x-crossing partner") {
    // bare crossing: edges (1,3) x (2,4); guard P = (1,3), park on 2
    OnePlaneGraph g;
    for (int v = 1; v <= 4; ++v) g.vertices.insert(v);
    int e1 = g.addEdge(1, 3);
    int e2 = g.addEdge(2, 4);
    g.crossings.push_back({e1, e2});
    CHECK(PathGuard::stationary_targets(g, {e1}) == std::vector<int>{2});

    PathGuard guard(g, g, {1, 3}, {0, 1, 2, 3, 4});
    guard.addStationary(5, 2);
    GameState s = state_at({1, 1, 1, 1, 1, 2}, 4);
    for (int t = 0; t < 6; ++t) advance(guard, s);
    CHECK(guard.active());
    // robber's only move crosses the dummy and lands on the parked cop
    s.robber = 2;
    CHECK(s.copAt(2));
    CHECK_THROWS_AS(PathGuard::stationary_targets(g, {99}), Error);
}

TEST_CASE("guard set covers the kite-protected dummy") {
    OnePlaneGraph g = augment_kites(named_graph("K4X")).graph;
    Planarization p = planarize(g);
    PathGuard guard(g, g, {1, 3}, {0, 1, 2, 3, 4});
    GameState s = state_at(std::vector<int>(5, 1), 4);
    for (int t = 0; t < 6 && !guard.active(); ++t) advance(guard, s);
    REQUIRE(guard.active());
    CHECK(guard.guardedQuery(1)); // U*'s own vertex
    CHECK(guard.guardedQuery(3));
    CHECK(guard.guardedQuery(p.dummyOf(0)));
    CHECK_FALSE(guard.guardedQuery(2));
}

TEST_CASE("robber leaving the ambient graph deactivates the guard") {
    OnePlaneGraph g = path_graph(6);
    OnePlaneGraph ambient = path_graph(4); // vertices 0..3 only
    PathGuard guard(g, ambient, {0, 1}, {0, 1, 2, 3, 4});
    GameState s = state_at(std::vector<int>(5, 0), 3);
    for (int t = 0; t < 8 && !guard.active(); ++t) advance(guard, s);
    REQUIRE(guard.active());
    s.robber = 4; // outside the ambient graph
    bool deactivated = false;
    for (const TraceEvent& e : advance(guard, s))
        if (e.type == "guard-deactivated") deactivated = true;
    CHECK(deactivated);
    CHECK_FALSE(guard.active());
}

TEST_CASE("a full squad run captures on a tree") {
    OnePlaneGraph t = random_tree(9, 2);
    // guard the path from the root to the deepest vertex; on a tree the
    // shadow strategy pins the robber into a shrinking branch, and the
    // pounce rule finishes once he is stuck
    std::vector<int> far = shortest_path(t, 0, 8);
    SquadCopStrategy cops(shortest_path(t, 0, far.back()));
    GreedyRobber robber;
    Trace tr = run(t, 5, cops, robber, 100);
    // not a full capture guarantee on every tree shape; just require legality
    CHECK(tr.records.size() > 2);
}

TEST_CASE("squad strategy vs all robbers on a path graph captures") {
    OnePlaneGraph p = path_graph(7);
    for (const char* rname : {"greedy", "stall", "oracle"}) {
        SquadCopStrategy cops(range_path(6));
        auto robber = make_robber(rname, 3);
        Trace tr = run(p, 5, cops, *robber, 200);
        CHECK(tr.captured);
    }
}
