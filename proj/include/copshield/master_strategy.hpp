#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "copshield/path_guard.hpp"
#include "copshield/territory.hpp"

namespace copshield {

// A walk of G-vertices together with its underlying G edges and the matching
// simple path in G^x (self-crossing loops short-cut away). The G^x data is
// pure bookkeeping; the squad physically walks `walkG` in G.
struct InterfacePath {
    std::vector<int> walkG;
    std::vector<int> edgeIds;
    std::vector<int> xVerts;        // simple G^x vertex sequence, in order
    std::vector<XEdge> xEdges;      // connecting G^x edges (size-1 of xVerts)
    PlanarSubgraph sub;
    int squad = -1;
};

// lowest-id edge of g between consecutive walk vertices
std::vector<int> walk_edges(const OnePlaneGraph& g, const std::vector<int>& walkG);

// Expands a G-walk into its G^x path, inserting dummies on crossed edges and
// short-cutting at repeated vertices so the result is simple. The result is
// reoriented to start at the endpoint with the lower G^x vertex id.
InterfacePath expand_walk(const Planarization& p, const std::vector<int>& walkG,
                          const std::vector<int>& edgeIds, bool reorient = true);

// A guarded cycle D = [P1, P2] of G^x: two vertex-disjoint paths plus the two
// connecting edges.
struct CycleInfo {
    InterfacePath p1, p2;
    std::vector<XEdge> connectors;
    PlanarSubgraph sub;
};

struct CaseRecord {
    int eta = 0;
    std::string label; // bootstrap, P1.1..P2.3, C1, C2.1..C2.3, C3a, C3b, endgame
    std::map<std::string, int> anchors;
};

// The 21-cop strategy: three squads of seven cops alternate between guarding
// an interface path and an interface cycle, growing the guarded subgraph L of
// G^x every iteration until the robber is cornered.
class MasterCopStrategy : public CopStrategy {
public:
    explicit MasterCopStrategy(bool checkInvariants = true)
        : check_(checkInvariants) {}
    std::string name() const override { return "strategy21"; }
    std::vector<int> place(const OnePlaneGraph& g, int copCount) override;
    std::vector<int> move(const OnePlaneGraph& g, const GameState& s) override;
    std::vector<TraceEvent> takeEvents() override;

    int iteration() const { return eta_; }
    const std::vector<CaseRecord>& history() const { return history_; }
    const PlanarSubgraph& guardedSubgraph() const { return L_; }

private:
    struct Lockstep {
        int cop = -1;
        int squad = -1; // whose shadow cop it imitates
        bool locked = false;
    };
    struct Pending {
        CaseRecord rec;
        int deploySquad = -1;
        char kind = 'P'; // 'P' path result, 'C' cycle result, '3' case C3
        InterfacePath newJ;          // 'P': next interface path
        std::optional<CycleInfo> cyc; // 'C': next interface cycle
        // C3 payload: the two candidate cycles after guarding P3
        std::optional<CycleInfo> dl, dr;
        int keepA = -1, keepB = -1; // owners kept for (a) / (b); other freed
        std::vector<int> freeAfter;
        PlanarSubgraph addToL;
    };

    std::array<int, 5> squadArr(int sq) const;
    int uStarCop(int sq) const { return 7 * sq; }
    int takeFreeSquad();
    std::set<int> assignedCops() const;
    void bootstrap_at(int root, const std::string& label);
    void start_iteration(const GameState& s);
    void case_one(const TerritoryView& view, int a, std::vector<int> freeAfter,
                  const std::string& prefix, int eta);
    void case_two(const TerritoryView& view, const std::vector<int>& order,
                  int u, int v, const InterfacePath& host, bool cycleCase,
                  const std::string& prefix, int eta);
    void case_c2(const TerritoryView& view, int a, int b, int eta);
    OnePlaneGraph case_graph(const TerritoryView& view, const std::vector<int>& gAnchors,
                             const std::vector<int>& extraEdges) const;
    void deploy(OnePlaneGraph ambient, const std::vector<int>& pathG,
                const std::vector<std::pair<int, int>>& stationaries);
    void maybe_finalize(const GameState& s, const std::vector<int>& moves);
    void finalize(const GameState& s);
    void assert_invariants(const GameState& s);
    const PlanarSubgraph& currentJ() const;

    bool check_;
    OnePlaneGraph g_;
    std::optional<Planarization> p_;
    int copCount_ = 21;
    int eta_ = 0;
    PlanarSubgraph L_;
    std::optional<InterfacePath> pathJ_;
    std::optional<CycleInfo> cycleJ_;
    std::map<int, PathGuard> guards_; // squad -> guard over cops 7s..7s+4
    std::vector<Lockstep> locksteps_;
    std::vector<std::pair<int, int>> parked_; // cop -> vertex, walk and hold
    std::set<int> freeSquads_{0, 1, 2};
    std::optional<Pending> pending_;
    std::vector<TraceEvent> events_;
    std::vector<CaseRecord> history_;
    bool booted_ = false;
};

// The stationary pre-pass for graphs with x-crossings: one parked cop per
// x-crossing, and the 21-cop strategy runs on the reduced graph.
struct GammaPrepass {
    std::vector<int> parked;       // parked vertex per x-crossing
    std::vector<int> removedEdges; // removed edge id per x-crossing
    OnePlaneGraph reduced;         // G' (x-crossing free)
};
GammaPrepass gamma_prepass(const OnePlaneGraph& g);

class GammaCopStrategy : public CopStrategy {
public:
    explicit GammaCopStrategy(bool checkInvariants = true)
        : inner_(checkInvariants) {}
    std::string name() const override { return "gamma21"; }
    std::vector<int> place(const OnePlaneGraph& g, int copCount) override;
    std::vector<int> move(const OnePlaneGraph& g, const GameState& s) override;
    std::vector<TraceEvent> takeEvents() override;
    const GammaPrepass& prepass() const { return prep_; }

private:
    MasterCopStrategy inner_;
    GammaPrepass prep_;
    OnePlaneGraph play_;      // the original graph
    OnePlaneGraph arena_;     // kite-augmented G'
    int innerCount_ = 21;
};

} // namespace copshield
