#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "copshield/graph_model.hpp"

namespace copshield {

struct GameState {
    enum class Phase { CopPlacement, RobberPlacement, CopsTurn, RobberTurn };

    std::vector<int> cops; // indexed by cop id
    int robber = -1;       // -1 while unplaced
    int round = 1;
    Phase phase = Phase::CopPlacement;
    bool captured = false;

    bool copAt(int v) const {
        return std::find(cops.begin(), cops.end(), v) != cops.end();
    }
};

struct TraceEvent {
    std::string type;
    nlohmann::json data = nlohmann::json::object();
};

class CopStrategy {
public:
    virtual ~CopStrategy() = default;
    virtual std::string name() const = 0;
    virtual std::vector<int> place(const OnePlaneGraph& g, int copCount) = 0;
    virtual std::vector<int> move(const OnePlaneGraph& g, const GameState& s) = 0;
    // events accumulated during the last call, for the trace
    virtual std::vector<TraceEvent> takeEvents() { return {}; }
};

class RobberStrategy {
public:
    virtual ~RobberStrategy() = default;
    virtual std::string name() const = 0;
    virtual int place(const OnePlaneGraph& g, const GameState& s) = 0;
    virtual int move(const OnePlaneGraph& g, const GameState& s) = 0;
};

struct Trace {
    nlohmann::json header;
    std::vector<nlohmann::json> records;
    bool captured = false;
    int rounds = 0;
    int exitCode = 3; // 0 capture, 3 budget exhausted

    std::string toJsonLines() const;
};

GameState new_game(const OnePlaneGraph& g, int copCount);

// Applies the next half-turn (including the two placement half-turns);
// illegal strategy output is a hard error naming the strategy.
std::vector<TraceEvent> step(const OnePlaneGraph& g, GameState& s, CopStrategy& cops,
                             RobberStrategy& robber);

Trace run(const OnePlaneGraph& g, int copCount, CopStrategy& cops, RobberStrategy& robber,
          int roundBudget, std::uint64_t seed = 0);

// default acceptance budget
int default_budget(const OnePlaneGraph& g);

// BFS distances from src over G (sorted neighbor order); unreachable = -1
std::vector<std::pair<int, int>> bfs_distances(const OnePlaneGraph& g, int src);
int graph_distance(const OnePlaneGraph& g, int a, int b);

} // namespace copshield
