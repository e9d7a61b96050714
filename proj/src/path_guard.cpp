#include "copshield/path_guard.hpp"

#include <algorithm>
#include <queue>

namespace copshield {

int next_step_toward(const OnePlaneGraph& g, int from, int to) {
    if (from == to) return from;
    std::map<int, int> dist;
    for (auto [v, d] : bfs_distances(g, to)) dist[v] = d;
    if (!dist.count(from) || dist[from] < 0) return from;
    auto adj = g.adjacency();
    int best = from;
    int bestD = dist[from];
    for (auto [w, e] : adj.at(from)) {
        auto it = dist.find(w);
        if (it == dist.end() || it->second < 0) continue;
        if (it->second < bestD) {
            bestD = it->second;
            best = w;
        }
    }
    return best;
}

int pounce_cop(const OnePlaneGraph& g, const GameState& s) {
    if (s.robber < 0) return -1;
    for (std::size_t i = 0; i < s.cops.size(); ++i)
        if (s.cops[i] == s.robber || g.joined(s.cops[i], s.robber))
            return static_cast<int>(i);
    return -1;
}

std::vector<int> shortest_path(const OnePlaneGraph& g, int from, int to) {
    std::map<int, int> pred;
    std::map<int, int> dist;
    dist[from] = 0;
    std::queue<int> q;
    q.push(from);
    auto adj = g.adjacency();
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (auto [w, e] : adj[v]) {
            if (dist.count(w)) continue;
            dist[w] = dist[v] + 1;
            pred[w] = v;
            q.push(w);
        }
    }
    if (!dist.count(to)) return {};
    std::vector<int> path{to};
    while (path.back() != from) path.push_back(pred[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

namespace {

// path edges (lowest id joining each consecutive pair)
std::vector<int> path_edge_ids(const OnePlaneGraph& g, const std::vector<int>& path) {
    std::vector<int> out;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        int found = -1;
        for (const Edge& e : g.edges) {
            if ((e.u == path[i] && e.v == path[i + 1]) ||
                (e.v == path[i] && e.u == path[i + 1])) {
                found = e.id;
                break;
            }
        }
        if (found < 0) throw Error("path guard: consecutive path vertices not adjacent");
        out.push_back(found);
    }
    return out;
}

} // namespace

PathGuard::PathGuard(const OnePlaneGraph& play, OnePlaneGraph ambient, std::vector<int> path,
                     std::array<int, 5> squad)
    : play_(&play), ambient_(std::move(ambient)), path_(std::move(path)), squad_(squad) {
    if (path_.empty()) throw Error("path guard: empty path");
    for (int v : path_)
        if (!ambient_.vertices.count(v)) throw Error("path guard: path leaves the ambient graph");
    for (auto [v, d] : bfs_distances(ambient_, path_.front())) distP0_[v] = d;
    for (std::size_t i = 0; i < path_.size(); ++i) {
        if (distP0_[path_[i]] != static_cast<int>(i))
            throw Error("path guard: path is not an ambient shortest path");
        idxOf_[path_[i]] = static_cast<int>(i);
    }

    // Q: the path's G-vertices plus its non-x crossing points, read off the
    // play graph's planarization
    Planarization p = planarize(*play_);
    std::vector<int> edges = path_edge_ids(*play_, path_);
    std::vector<int> xcross = detect_x_crossings(*play_);
    std::set<int> xset(xcross.begin(), xcross.end());
    guardQ_.insert(path_.begin(), path_.end());
    for (int e : edges) {
        int ci = play_->crossingOf(e);
        if (ci >= 0 && !xset.count(ci)) guardQ_.insert(p.dummyOf(ci));
    }
}

void PathGuard::addStationary(int copId, int vertex) {
    if (!play_->vertices.count(vertex)) throw Error("path guard: bad stationary vertex");
    stationary_.push_back({copId, vertex});
}

std::vector<int> PathGuard::stationary_targets(const OnePlaneGraph& g,
                                               const std::vector<int>& pathEdges) {
    std::vector<int> out;
    for (int e : pathEdges) {
        int ci = g.crossingOf(e);
        if (ci < 0) throw Error("stationary_targets: edge not crossed");
        Crossing c = crossing_at(g, ci);
        int partner = c.edgeA == e ? c.edgeB : c.edgeA;
        const Edge& pe = g.edgeRef(partner);
        out.push_back(std::min(pe.u, pe.v));
    }
    return out;
}

int PathGuard::shadowIndex(int robberAt) const {
    if (!ambient_.vertices.count(robberAt))
        throw Error("path guard: robber outside the ambient graph");
    auto it = distP0_.find(robberAt);
    int m = static_cast<int>(path_.size()) - 1;
    // unreachable robbers in a disconnected ambient graph count as maximally far
    if (it == distP0_.end() || it->second < 0) return m;
    return std::min(it->second, m);
}

int PathGuard::pathIndexTarget(int escort, int shadowIdx) const {
    static constexpr int offsets[5] = {0, -1, +1, -2, +2};
    int m = static_cast<int>(path_.size()) - 1;
    return std::clamp(shadowIdx + offsets[escort], 0, m);
}

int PathGuard::potential(const GameState& st) const {
    int s = shadowIndex(st.robber);
    int m = static_cast<int>(path_.size()) - 1;
    if (onPath_[0]) {
        int i = *onPath_[0];
        int phi = std::abs(i - s);
        if (s > i) phi += m - s;
        else if (s < i) phi += s;
        return phi;
    }
    int d = graph_distance(*play_, st.cops[static_cast<std::size_t>(squad_[0])], path_.front());
    return (d < 0 ? 0 : d) + m;
}

std::vector<TraceEvent> PathGuard::step(const GameState& s, std::vector<int>& moves,
                                        bool checkInvariants) {
    std::vector<TraceEvent> events;
    if (s.robber < 0) throw Error("path guard: robber not placed");
    if (!ambient_.vertices.count(s.robber)) {
        if (active_ || !lost_) {
            lost_ = true;
            if (active_) {
                active_ = false;
                events.push_back({"guard-deactivated", {{"path0", path_.front()}}});
            }
        }
        // hold positions
        for (int c = 0; c < 5; ++c) moves[static_cast<std::size_t>(squad_[c])] = s.cops[static_cast<std::size_t>(squad_[c])];
        for (auto [cop, v] : stationary_) moves[static_cast<std::size_t>(cop)] = s.cops[static_cast<std::size_t>(cop)];
        return events;
    }
    lost_ = false;

    int shadow = shadowIndex(s.robber);
    int uStarIdx = -1;

    for (int c = 0; c < 5; ++c) {
        int cop = squad_[c];
        int at = s.cops[static_cast<std::size_t>(cop)];
        auto& idx = onPath_[static_cast<std::size_t>(c)];
        if (!idx && at == path_.front()) idx = 0;
        // escorts key off the shadow cop's position after its own move
        int target = pathIndexTarget(c, c == 0 ? shadow : (uStarIdx >= 0 ? uStarIdx : shadow));
        int next;
        if (!idx) {
            next = next_step_toward(*play_, at, path_.front());
            if (next == path_.front()) idx = 0;
        } else {
            int i = *idx;
            int ni = i + (target > i ? 1 : target < i ? -1 : 0);
            next = path_[static_cast<std::size_t>(ni)];
            idx = ni;
        }
        moves[static_cast<std::size_t>(cop)] = next;
        if (c == 0 && idx) uStarIdx = *idx;
    }
    for (auto [cop, v] : stationary_)
        moves[static_cast<std::size_t>(cop)] = next_step_toward(*play_, s.cops[static_cast<std::size_t>(cop)], v);

    // activation check against the post-move formation
    bool inPlace = uStarIdx == shadow;
    for (int c = 1; c < 5 && inPlace; ++c) {
        auto idx = onPath_[static_cast<std::size_t>(c)];
        if (!idx || *idx != pathIndexTarget(c, uStarIdx)) inPlace = false;
    }
    for (auto [cop, v] : stationary_)
        if (moves[static_cast<std::size_t>(cop)] != v) inPlace = false;
    if (inPlace && !active_) {
        active_ = true;
        events.push_back({"guard-activated", {{"path0", path_.front()}, {"shadow", shadow}}});
    }

    if (active_ && checkInvariants) {
        // shadow-distance bound: d_P(U*, v) <= d_A(robber, v) for all v on P
        std::map<int, int> dr;
        for (auto [v, d] : bfs_distances(ambient_, s.robber)) dr[v] = d;
        for (std::size_t j = 0; j < path_.size(); ++j) {
            int dv = dr.count(path_[j]) ? dr[path_[j]] : -1;
            if (dv < 0) continue;
            if (std::abs(static_cast<int>(j) - uStarIdx) > dv)
                throw Error("path guard: shadow distance bound violated");
        }
    }
    return events;
}

SquadCopStrategy::SquadCopStrategy(std::vector<int> path, int copCount)
    : path_(std::move(path)), copCount_(copCount) {}

std::vector<int> SquadCopStrategy::place(const OnePlaneGraph& g, int copCount) {
    copCount_ = copCount;
    guard_.emplace(g, g, path_, std::array<int, 5>{0, 1, 2, 3, 4});
    return std::vector<int>(static_cast<std::size_t>(copCount), path_.front());
}

std::vector<int> SquadCopStrategy::move(const OnePlaneGraph& g, const GameState& s) {
    std::vector<int> moves = s.cops;
    int p = pounce_cop(g, s);
    if (p >= 0) {
        moves[static_cast<std::size_t>(p)] = s.robber;
        events_.push_back({"pounce", {{"cop", p}}});
        return moves;
    }
    std::vector<TraceEvent> ev = guard_->step(s, moves);
    events_.insert(events_.end(), ev.begin(), ev.end());
    return moves;
}

std::vector<TraceEvent> SquadCopStrategy::takeEvents() {
    std::vector<TraceEvent> out = std::move(events_);
    events_.clear();
    return out;
}

} // namespace copshield
