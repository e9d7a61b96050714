#include "copshield/robbers.hpp"

#include <algorithm>
#include <climits>

namespace copshield {

namespace {

std::map<int, int> dist_from(const OnePlaneGraph& g, int src) {
    std::map<int, int> out;
    for (auto [v, d] : bfs_distances(g, src)) out[v] = d;
    return out;
}

// minimum distance from v to any cop; unreachable cops don't constrain
int min_cop_dist(const std::vector<std::map<int, int>>& copDist, int v) {
    int best = INT_MAX;
    for (const auto& d : copDist) {
        auto it = d.find(v);
        if (it != d.end() && it->second >= 0) best = std::min(best, it->second);
    }
    return best;
}

std::vector<int> robber_options(const OnePlaneGraph& g, const GameState& s) {
    std::vector<int> opts{s.robber};
    auto adj = g.adjacency();
    for (auto [w, e] : adj[s.robber])
        if (w != s.robber && std::find(opts.begin(), opts.end(), w) == opts.end())
            opts.push_back(w);
    std::sort(opts.begin(), opts.end());
    return opts;
}

std::vector<std::map<int, int>> cop_dists(const OnePlaneGraph& g, const std::vector<int>& cops) {
    std::vector<std::map<int, int>> out;
    std::set<int> seen;
    for (int c : cops)
        if (seen.insert(c).second) out.push_back(dist_from(g, c));
    return out;
}

int greedy_pick(const OnePlaneGraph& g, const std::vector<int>& cops,
                const std::vector<int>& candidates) {
    auto copDist = cop_dists(g, cops);
    int best = candidates.front();
    int bestScore = -1;
    for (int v : candidates) {
        int score = min_cop_dist(copDist, v);
        if (score == INT_MAX) score = static_cast<int>(g.vertices.size()); // own component
        if (score > bestScore) {
            bestScore = score;
            best = v;
        }
    }
    return best;
}

} // namespace

int RandomRobber::place(const OnePlaneGraph& g, const GameState& s) {
    std::vector<int> free;
    for (int v : g.vertices)
        if (!s.copAt(v)) free.push_back(v);
    if (free.empty()) return *g.vertices.begin(); // forced onto a cop
    return free[rng_() % free.size()];
}

int RandomRobber::move(const OnePlaneGraph& g, const GameState& s) {
    std::vector<int> opts = robber_options(g, s);
    std::vector<int> safe;
    for (int v : opts)
        if (!s.copAt(v)) safe.push_back(v);
    if (safe.empty()) return s.robber;
    return safe[rng_() % safe.size()];
}

int GreedyRobber::place(const OnePlaneGraph& g, const GameState& s) {
    std::vector<int> all(g.vertices.begin(), g.vertices.end());
    return greedy_pick(g, s.cops, all);
}

int GreedyRobber::move(const OnePlaneGraph& g, const GameState& s) {
    return greedy_pick(g, s.cops, robber_options(g, s));
}

int StallRobber::place(const OnePlaneGraph& g, const GameState& s) {
    std::vector<int> all(g.vertices.begin(), g.vertices.end());
    return greedy_pick(g, s.cops, all);
}

int StallRobber::move(const OnePlaneGraph& g, const GameState& s) {
    bool threatened = s.copAt(s.robber);
    if (!threatened)
        for (int c : s.cops)
            if (g.joined(c, s.robber)) threatened = true;
    if (!threatened) return s.robber;
    return greedy_pick(g, s.cops, robber_options(g, s));
}

Oracle& OracleRobber::oracleFor(const OnePlaneGraph& g, int k) {
    auto it = oracles_.find(k);
    if (it == oracles_.end())
        it = oracles_.emplace(k, std::make_unique<Oracle>(g, k)).first;
    return *it->second;
}

// distinct cop vertices, nearest-to-robber first (all of them at placement)
std::vector<int> OracleRobber::project(const OnePlaneGraph& g, const GameState& s) const {
    std::set<int> distinct(s.cops.begin(), s.cops.end());
    std::vector<int> out(distinct.begin(), distinct.end());
    if (static_cast<int>(out.size()) <= maxProjected_ || s.robber < 0) return out;
    auto d = dist_from(g, s.robber);
    std::stable_sort(out.begin(), out.end(), [&](int a, int b) {
        int da = d.count(a) ? d[a] : INT_MAX;
        int db = d.count(b) ? d[b] : INT_MAX;
        return da < db;
    });
    out.resize(static_cast<std::size_t>(maxProjected_));
    std::sort(out.begin(), out.end());
    return out;
}

int OracleRobber::place(const OnePlaneGraph& g, const GameState& s) {
    std::vector<int> proj = project(g, s);
    if (static_cast<int>(proj.size()) > maxProjected_) {
        std::vector<int> all(g.vertices.begin(), g.vertices.end());
        return greedy_pick(g, s.cops, all);
    }
    int v = oracleFor(g, static_cast<int>(proj.size())).bestRobberPlacement(proj);
    if (v < 0 || s.copAt(v)) {
        std::vector<int> all(g.vertices.begin(), g.vertices.end());
        return greedy_pick(g, s.cops, all);
    }
    return v;
}

int OracleRobber::move(const OnePlaneGraph& g, const GameState& s) {
    std::vector<int> proj = project(g, s);
    int target = oracleFor(g, static_cast<int>(proj.size())).robberMove(proj, s.robber);
    // the projection may hide a cop; never walk into one that is avoidable
    if (s.copAt(target)) {
        std::vector<int> safe;
        for (int v : robber_options(g, s))
            if (!s.copAt(v)) safe.push_back(v);
        if (safe.empty()) return s.robber;
        return greedy_pick(g, s.cops, safe);
    }
    return target;
}

int InteractiveRobber::prompt(const OnePlaneGraph& g, const GameState& s, bool placement) {
    auto adj = g.adjacency();
    while (true) {
        if (placement) {
            out_ << "cops at [";
            for (std::size_t i = 0; i < s.cops.size(); ++i)
                out_ << (i ? " " : "") << s.cops[i];
            out_ << "]; place robber: " << std::flush;
        } else {
            out_ << "robber at " << s.robber << "; neighbors:";
            for (auto [w, e] : adj[s.robber]) out_ << " " << w;
            out_ << "; cops at [";
            for (std::size_t i = 0; i < s.cops.size(); ++i)
                out_ << (i ? " " : "") << s.cops[i];
            out_ << "]; move to: " << std::flush;
        }
        int v;
        if (!(in_ >> v)) throw Error("interactive robber: input closed");
        if (!g.vertices.count(v)) {
            out_ << "not a vertex\n";
            continue;
        }
        if (!placement && v != s.robber && !g.joined(s.robber, v)) {
            out_ << "not adjacent\n";
            continue;
        }
        return v;
    }
}

int InteractiveRobber::place(const OnePlaneGraph& g, const GameState& s) {
    return prompt(g, s, true);
}

int InteractiveRobber::move(const OnePlaneGraph& g, const GameState& s) {
    return prompt(g, s, false);
}

std::vector<int> match_moves(const OnePlaneGraph& g, const std::vector<int>& cops,
                             std::vector<int> target) {
    if (target.size() != cops.size()) throw Error("match_moves: size mismatch");
    std::sort(target.begin(), target.end());
    do {
        bool ok = true;
        for (std::size_t i = 0; i < cops.size() && ok; ++i)
            if (target[i] != cops[i] && !g.joined(cops[i], target[i])) ok = false;
        if (ok) return target;
    } while (std::next_permutation(target.begin(), target.end()));
    throw Error("match_moves: no legal assignment");
}

std::vector<int> OracleCopStrategy::place(const OnePlaneGraph& g, int copCount) {
    oracle_ = std::make_unique<Oracle>(g, copCount);
    return oracle_->bestPlacement();
}

std::vector<int> OracleCopStrategy::move(const OnePlaneGraph& g, const GameState& s) {
    if (!oracle_) throw Error("oracle-policy: place() not called");
    std::vector<int> target = oracle_->copMove(s.cops, s.robber);
    return match_moves(g, s.cops, target);
}

std::vector<int> GreedyCopStrategy::place(const OnePlaneGraph& g, int copCount) {
    // spread over the lowest vertex ids
    std::vector<int> out;
    auto it = g.vertices.begin();
    for (int i = 0; i < copCount; ++i) {
        out.push_back(*it);
        if (std::next(it) != g.vertices.end()) ++it;
    }
    return out;
}

std::vector<int> GreedyCopStrategy::move(const OnePlaneGraph& g, const GameState& s) {
    auto d = dist_from(g, s.robber);
    auto adj = g.adjacency();
    std::vector<int> out;
    for (int c : s.cops) {
        int best = c;
        int bestD = d.count(c) ? d[c] : -1;
        if (bestD < 0) {
            out.push_back(c);
            continue;
        }
        for (auto [w, e] : adj[c]) {
            int wd = d.count(w) ? d[w] : INT_MAX;
            if (wd < bestD) {
                bestD = wd;
                best = w;
            }
        }
        out.push_back(best);
    }
    return out;
}

std::unique_ptr<RobberStrategy> make_robber(const std::string& name, std::uint64_t seed) {
    if (name == "random") return std::make_unique<RandomRobber>(seed);
    if (name == "greedy") return std::make_unique<GreedyRobber>();
    if (name == "stall") return std::make_unique<StallRobber>();
    if (name == "oracle") return std::make_unique<OracleRobber>();
    if (name == "interactive") return std::make_unique<InteractiveRobber>();
    throw Error("unknown robber strategy: " + name);
}

} // namespace copshield
