#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "copshield/graph_model.hpp"

namespace copshield {

// Exact k-cop game solver by retrograde analysis over canonical positions
// (sorted cop multiset, robber vertex, side to move). Crossings play no role
// here; the game is on the abstract graph.
class Oracle {
public:
    static constexpr std::size_t kDefaultPositionCap = 50'000'000;

    // Builds the full win/depth tables, or loads them from the cache
    // directory named by COPSHIELD_CACHE (keyed by graph hash and k).
    Oracle(const OnePlaneGraph& g, int k, std::size_t positionCap = kDefaultPositionCap);

    int k() const { return k_; }

    // with optimal placement on both sides
    bool copsWin() const;
    std::vector<int> bestPlacement() const;
    // robber's best reply to a placement; -1 when every vertex is lost
    int bestRobberPlacement(const std::vector<int>& cops) const;

    bool copWinFrom(const std::vector<int>& cops, int robber, bool copsToMove) const;
    // half-turns to capture from a cop-won position; nullopt if robber-won
    std::optional<std::uint32_t> depthFrom(const std::vector<int>& cops, int robber,
                                           bool copsToMove) const;

    // optimal moves (deterministic tie-breaks); preconditions: cops' turn /
    // robber's turn respectively, robber not yet caught
    std::vector<int> copMove(const std::vector<int>& cops, int robber) const;
    int robberMove(const std::vector<int>& cops, int robber) const;

private:
    std::size_t configIndex(std::vector<int> cops) const;
    std::size_t posIndex(std::size_t cfg, std::size_t rIdx, int side) const;
    std::size_t robberIndex(int v) const;
    void solve();
    bool loadCache();
    void saveCache() const;
    std::string cachePath() const;

    int k_;
    std::uint64_t hash_;
    std::vector<int> verts_;                    // sorted G-vertices
    std::map<int, std::size_t> vertIdx_;
    std::vector<std::vector<int>> nbr_;         // closed neighborhoods, sorted
    std::vector<std::vector<int>> configs_;     // sorted multisets, lex order
    std::map<std::vector<int>, std::size_t> configIdx_;
    std::vector<std::vector<std::uint32_t>> configSucc_; // canonical cop moves
    std::vector<bool> win_;
    std::vector<std::uint32_t> depth_;
};

bool cop_win(const OnePlaneGraph& g, int k,
             std::size_t positionCap = Oracle::kDefaultPositionCap);

// least k <= kMax with cop_win, or nullopt
std::optional<int> cop_number(const OnePlaneGraph& g, int kMax,
                              std::size_t positionCap = Oracle::kDefaultPositionCap);

// elimination order by iterated removal of dominated vertices, if the graph
// dismantles to a single vertex per component
std::optional<std::vector<int>> dismantle_order(const OnePlaneGraph& g);
bool dismantlable(const OnePlaneGraph& g);

} // namespace copshield
