#pragma once

#include <array>
#include <optional>

#include "copshield/game_engine.hpp"
#include "copshield/territory.hpp"

namespace copshield {

// next vertex on a BFS-shortest walk from `from` to `to` (ties: lowest id);
// `from` itself when already there or unreachable
int next_step_toward(const OnePlaneGraph& g, int from, int to);

// index of some cop standing on or adjacent to the robber, or -1
int pounce_cop(const OnePlaneGraph& g, const GameState& s);

// Five-cop guard of a shortest path. The path lives in an ambient graph A
// (shadow distances are measured there); the cops walk in the play graph G.
// Squad cop 0 is the shadow cop, 1..4 the escorts at offsets -1,+1,-2,+2;
// stationary cops may be attached for crossing endpoints.
class PathGuard {
public:
    PathGuard(const OnePlaneGraph& play, OnePlaneGraph ambient, std::vector<int> path,
              std::array<int, 5> squad);

    // park an extra cop on `vertex` (it walks there and stays)
    void addStationary(int copId, int vertex);
    // the lowest-id endpoint of the partner edge crossing each listed path
    // edge; throws if an edge is not crossed
    static std::vector<int> stationary_targets(const OnePlaneGraph& g,
                                               const std::vector<int>& pathEdges);

    int shadowIndex(int robberAt) const; // min(d_A(p0, r), m)
    bool active() const { return active_; }
    const std::vector<int>& path() const { return path_; }
    const std::set<int>& guardSet() const { return guardQ_; }
    std::array<int, 5> squad() const { return squad_; }
    std::vector<std::pair<int, int>> stationaries() const { return stationary_; }

    // true when v is in Q and the formation vouches for it (active)
    bool guardedQuery(int v) const { return active_ && guardQ_.count(v) > 0; }

    // Writes this squad's moves into `moves` (indexed by cop id; entries for
    // other cops untouched). Checks the shadow-distance invariant while
    // active and throws on violation when `checkInvariants`.
    std::vector<TraceEvent> step(const GameState& s, std::vector<int>& moves,
                                 bool checkInvariants = true);

    // stabilization potential of the shadow cop: |idx - shadow| plus the
    // robber's remaining flee slack; bounds the rounds until idx == shadow
    int potential(const GameState& s) const;

private:
    int pathIndexTarget(int escort, int shadowIdx) const;

    const OnePlaneGraph* play_;
    OnePlaneGraph ambient_;
    std::map<int, int> distP0_;
    std::vector<int> path_;
    std::map<int, int> idxOf_; // path vertex -> index
    std::set<int> guardQ_;
    std::array<int, 5> squad_;
    std::array<std::optional<int>, 5> onPath_; // current path index once arrived
    std::vector<std::pair<int, int>> stationary_;
    bool active_ = false;
    bool lost_ = false;
};

// Builds the ambient-shortest path between two vertices (BFS, lexicographic
// tie-break by predecessor id); empty if unreachable.
std::vector<int> shortest_path(const OnePlaneGraph& g, int from, int to);

// Wraps a single PathGuard as a full CopStrategy (pounce rule included);
// unassigned cops stay at their placement. For tests and small demos.
class SquadCopStrategy : public CopStrategy {
public:
    // guard factory runs after placement (needs the graph)
    explicit SquadCopStrategy(std::vector<int> path, int copCount = 5);
    std::string name() const override { return "squad"; }
    std::vector<int> place(const OnePlaneGraph& g, int copCount) override;
    std::vector<int> move(const OnePlaneGraph& g, const GameState& s) override;
    std::vector<TraceEvent> takeEvents() override;
    PathGuard* guard() { return guard_ ? &*guard_ : nullptr; }

private:
    std::vector<int> path_;
    int copCount_;
    std::optional<PathGuard> guard_;
    std::vector<TraceEvent> events_;
};

} // namespace copshield
