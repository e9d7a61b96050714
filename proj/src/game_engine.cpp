#include "copshield/game_engine.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace copshield {

using json = nlohmann::json;

std::vector<std::pair<int, int>> bfs_distances(const OnePlaneGraph& g, int src) {
    auto adj = g.adjacency();
    std::map<int, int> dist;
    dist[src] = 0;
    std::queue<int> q;
    q.push(src);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (auto [w, e] : adj[v]) {
            if (dist.count(w)) continue;
            dist[w] = dist[v] + 1;
            q.push(w);
        }
    }
    std::vector<std::pair<int, int>> out;
    for (int v : g.vertices) out.push_back({v, dist.count(v) ? dist[v] : -1});
    return out;
}

int graph_distance(const OnePlaneGraph& g, int a, int b) {
    for (auto [v, d] : bfs_distances(g, a))
        if (v == b) return d;
    return -1;
}

GameState new_game(const OnePlaneGraph& g, int copCount) {
    if (g.vertices.empty()) throw Error("new_game: empty graph");
    if (copCount < 1) throw Error("new_game: need at least one cop");
    GameState s;
    s.cops.assign(static_cast<std::size_t>(copCount), -1);
    return s;
}

namespace {

void require_vertex(const OnePlaneGraph& g, int v, const std::string& who) {
    if (!g.vertices.count(v))
        throw Error(who + " returned a non-vertex: " + std::to_string(v));
}

void require_move(const OnePlaneGraph& g, int from, int to, const std::string& who) {
    require_vertex(g, to, who);
    if (to != from && !g.joined(from, to))
        throw Error(who + " made an illegal move " + std::to_string(from) + " -> " +
                    std::to_string(to));
}

} // namespace

std::vector<TraceEvent> step(const OnePlaneGraph& g, GameState& s, CopStrategy& cops,
                             RobberStrategy& robber) {
    if (s.captured) throw Error("step: game already over");
    std::vector<TraceEvent> events;
    switch (s.phase) {
    case GameState::Phase::CopPlacement: {
        std::vector<int> pos = cops.place(g, static_cast<int>(s.cops.size()));
        if (pos.size() != s.cops.size())
            throw Error(cops.name() + " placed the wrong number of cops");
        for (int v : pos) require_vertex(g, v, cops.name());
        s.cops = pos;
        s.phase = GameState::Phase::RobberPlacement;
        events = cops.takeEvents();
        break;
    }
    case GameState::Phase::RobberPlacement: {
        int v = robber.place(g, s);
        require_vertex(g, v, robber.name());
        s.robber = v;
        s.phase = GameState::Phase::CopsTurn;
        s.round = 2;
        break;
    }
    case GameState::Phase::CopsTurn: {
        std::vector<int> pos = cops.move(g, s);
        if (pos.size() != s.cops.size())
            throw Error(cops.name() + " moved the wrong number of cops");
        for (std::size_t i = 0; i < pos.size(); ++i)
            require_move(g, s.cops[i], pos[i], cops.name());
        s.cops = pos; // simultaneous batch update
        s.phase = GameState::Phase::RobberTurn;
        events = cops.takeEvents();
        break;
    }
    case GameState::Phase::RobberTurn: {
        int v = robber.move(g, s);
        require_move(g, s.robber, v, robber.name());
        s.robber = v;
        s.phase = GameState::Phase::CopsTurn;
        ++s.round;
        break;
    }
    }
    if (s.robber >= 0 && s.copAt(s.robber)) {
        s.captured = true;
        events.push_back({"capture", {{"vertex", s.robber}}});
    }
    return events;
}

namespace {

const char* phase_name(GameState::Phase p) {
    switch (p) {
    case GameState::Phase::CopPlacement: return "cop-placement";
    case GameState::Phase::RobberPlacement: return "robber-placement";
    case GameState::Phase::CopsTurn: return "cops";
    case GameState::Phase::RobberTurn: return "robber";
    }
    return "?";
}

} // namespace

Trace run(const OnePlaneGraph& g, int copCount, CopStrategy& cops, RobberStrategy& robber,
          int roundBudget, std::uint64_t seed) {
    if (roundBudget < 1) throw Error("run: budget must be positive");
    Trace tr;
    tr.header = {{"graph_hash", graph_hash(g)},
                 {"cop_strategy", cops.name()},
                 {"robber_strategy", robber.name()},
                 {"cop_count", copCount},
                 {"seed", seed},
                 {"budget", roundBudget}};
    GameState s = new_game(g, copCount);
    while (!s.captured && s.round <= roundBudget) {
        GameState::Phase ph = s.phase;
        std::vector<TraceEvent> events = step(g, s, cops, robber);
        json evs = json::array();
        for (const TraceEvent& e : events) {
            json j = e.data;
            j["type"] = e.type;
            evs.push_back(j);
        }
        tr.records.push_back({{"round", s.round},
                              {"phase", phase_name(ph)},
                              {"cops", s.cops},
                              {"robber", s.robber},
                              {"captured", s.captured},
                              {"events", evs}});
    }
    tr.captured = s.captured;
    tr.rounds = s.round;
    tr.exitCode = s.captured ? 0 : 3;
    return tr;
}

int default_budget(const OnePlaneGraph& g) {
    int nx = static_cast<int>(g.vertices.size() + g.crossings.size());
    return 50 * nx * nx;
}

std::string Trace::toJsonLines() const {
    std::ostringstream out;
    out << header.dump() << "\n";
    for (const json& r : records) out << r.dump() << "\n";
    return out.str();
}

} // namespace copshield
