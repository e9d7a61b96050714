#include "copshield/exact_oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>

namespace copshield {

namespace {

// C(n+k-1, k) with saturation
std::size_t multiset_count(std::size_t n, int k, std::size_t cap) {
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (n + static_cast<std::size_t>(i) - 1) / static_cast<std::size_t>(i);
        if (r > cap) return cap + 1;
    }
    return r;
}

} // namespace

Oracle::Oracle(const OnePlaneGraph& g, int k, std::size_t positionCap) : k_(k) {
    if (k < 1) throw Error("oracle: need k >= 1");
    hash_ = graph_hash(g);
    verts_.assign(g.vertices.begin(), g.vertices.end());
    if (verts_.empty()) throw Error("oracle: empty graph");
    for (std::size_t i = 0; i < verts_.size(); ++i) vertIdx_[verts_[i]] = i;

    std::size_t n = verts_.size();
    std::size_t nCfg = multiset_count(n, k, positionCap);
    if (nCfg > positionCap || nCfg * n * 2 > positionCap)
        throw Error("oracle: position cap exceeded");

    auto adj = g.adjacency();
    nbr_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::set<int> cn{verts_[i]};
        for (auto [w, e] : adj[verts_[i]]) cn.insert(w);
        nbr_[i].assign(cn.begin(), cn.end());
    }

    // all sorted multisets of size k, lexicographic
    std::vector<int> cur(static_cast<std::size_t>(k));
    auto gen = [&](auto&& self, int pos, std::size_t lo) -> void {
        if (pos == k) {
            configIdx_[cur] = configs_.size();
            configs_.push_back(cur);
            return;
        }
        for (std::size_t i = lo; i < n; ++i) {
            cur[static_cast<std::size_t>(pos)] = verts_[i];
            self(self, pos + 1, i);
        }
    };
    gen(gen, 0, 0);

    if (!loadCache()) {
        solve();
        saveCache();
    }
}

std::size_t Oracle::robberIndex(int v) const {
    auto it = vertIdx_.find(v);
    if (it == vertIdx_.end()) throw Error("oracle: unknown vertex");
    return it->second;
}

std::size_t Oracle::configIndex(std::vector<int> cops) const {
    if (static_cast<int>(cops.size()) != k_) throw Error("oracle: wrong cop count");
    std::sort(cops.begin(), cops.end());
    auto it = configIdx_.find(cops);
    if (it == configIdx_.end()) throw Error("oracle: unknown cop position");
    return it->second;
}

std::size_t Oracle::posIndex(std::size_t cfg, std::size_t rIdx, int side) const {
    return (cfg * verts_.size() + rIdx) * 2 + static_cast<std::size_t>(side);
}

void Oracle::solve() {
    std::size_t n = verts_.size();
    std::size_t nPos = configs_.size() * n * 2;
    win_.assign(nPos, false);
    depth_.assign(nPos, 0);

    // canonical cop successor configurations (the move relation is symmetric,
    // so these double as predecessors)
    configSucc_.resize(configs_.size());
    for (std::size_t c = 0; c < configs_.size(); ++c) {
        std::set<std::vector<int>> out;
        std::vector<int> pick(static_cast<std::size_t>(k_));
        auto rec = [&](auto&& self, int i) -> void {
            if (i == k_) {
                std::vector<int> s = pick;
                std::sort(s.begin(), s.end());
                out.insert(std::move(s));
                return;
            }
            for (int w : nbr_[vertIdx_.at(configs_[c][static_cast<std::size_t>(i)])]) {
                pick[static_cast<std::size_t>(i)] = w;
                self(self, i + 1);
            }
        };
        rec(rec, 0);
        for (const auto& s : out)
            configSucc_[c].push_back(static_cast<std::uint32_t>(configIdx_.at(s)));
    }

    // out-degree counters for robber-to-move (AND) positions
    std::vector<std::uint32_t> counter(nPos, 0);
    std::deque<std::size_t> queue;
    for (std::size_t c = 0; c < configs_.size(); ++c) {
        for (std::size_t r = 0; r < n; ++r) {
            bool caught = std::binary_search(configs_[c].begin(), configs_[c].end(), verts_[r]);
            for (int side : {0, 1}) {
                std::size_t p = posIndex(c, r, side);
                if (caught) {
                    win_[p] = true;
                    queue.push_back(p);
                } else if (side == 1) {
                    counter[p] = static_cast<std::uint32_t>(nbr_[r].size());
                }
            }
        }
    }

    while (!queue.empty()) {
        std::size_t p = queue.front();
        queue.pop_front();
        std::size_t side = p % 2;
        std::size_t rIdx = (p / 2) % n;
        std::size_t cfg = p / 2 / n;
        std::uint32_t d = depth_[p];

        if (side == 1) {
            // cops just moved here: predecessors are (cfg', r, cops-to-move)
            for (std::uint32_t pc : configSucc_[cfg]) {
                std::size_t q = posIndex(pc, rIdx, 0);
                if (win_[q]) continue;
                win_[q] = true;
                depth_[q] = d + 1;
                queue.push_back(q);
            }
        } else {
            // robber just moved here: predecessors are (cfg, r', robber-to-move)
            for (int rv : nbr_[rIdx]) {
                std::size_t q = posIndex(cfg, vertIdx_.at(rv), 1);
                if (win_[q]) continue;
                if (--counter[q] == 0) {
                    win_[q] = true;
                    depth_[q] = d + 1;
                    queue.push_back(q);
                }
            }
        }
    }
    configSucc_.clear();
    configSucc_.shrink_to_fit();
}

bool Oracle::copsWin() const {
    std::size_t n = verts_.size();
    for (std::size_t c = 0; c < configs_.size(); ++c) {
        bool all = true;
        for (std::size_t r = 0; r < n && all; ++r)
            if (!win_[posIndex(c, r, 0)]) all = false;
        if (all) return true;
    }
    return false;
}

std::vector<int> Oracle::bestPlacement() const {
    std::size_t n = verts_.size();
    std::size_t best = 0;
    bool haveWin = false;
    std::uint64_t bestScore = ~0ull;
    for (std::size_t c = 0; c < configs_.size(); ++c) {
        bool all = true;
        std::uint32_t worst = 0;
        for (std::size_t r = 0; r < n; ++r) {
            std::size_t p = posIndex(c, r, 0);
            if (!win_[p]) {
                all = false;
                break;
            }
            worst = std::max(worst, depth_[p]);
        }
        if (all && (!haveWin || worst < bestScore)) {
            haveWin = true;
            best = c;
            bestScore = worst;
        }
    }
    return configs_[best]; // lex-least winning placement of minimal worst depth
}

int Oracle::bestRobberPlacement(const std::vector<int>& cops) const {
    std::size_t c = configIndex(cops);
    int best = -1;
    bool bestSafe = false;
    std::uint32_t bestDepth = 0;
    for (std::size_t r = 0; r < verts_.size(); ++r) {
        if (std::binary_search(configs_[c].begin(), configs_[c].end(), verts_[r])) continue;
        std::size_t p = posIndex(c, r, 0);
        bool safe = !win_[p];
        if (best < 0 || (safe && !bestSafe) ||
            (safe == bestSafe && !safe && depth_[p] > bestDepth)) {
            best = verts_[r];
            bestSafe = safe;
            bestDepth = depth_[p];
        }
    }
    return best;
}

bool Oracle::copWinFrom(const std::vector<int>& cops, int robber, bool copsToMove) const {
    return win_[posIndex(configIndex(cops), robberIndex(robber), copsToMove ? 0 : 1)];
}

std::optional<std::uint32_t> Oracle::depthFrom(const std::vector<int>& cops, int robber,
                                               bool copsToMove) const {
    std::size_t p = posIndex(configIndex(cops), robberIndex(robber), copsToMove ? 0 : 1);
    if (!win_[p]) return std::nullopt;
    return depth_[p];
}

std::vector<int> Oracle::copMove(const std::vector<int>& cops, int robber) const {
    std::size_t c = configIndex(cops);
    std::size_t r = robberIndex(robber);
    // regenerate successors (they are dropped after solving to save memory)
    std::set<std::vector<int>> succ;
    std::vector<int> pick(static_cast<std::size_t>(k_));
    auto rec = [&](auto&& self, int i) -> void {
        if (i == k_) {
            std::vector<int> s = pick;
            std::sort(s.begin(), s.end());
            succ.insert(std::move(s));
            return;
        }
        for (int w : nbr_[vertIdx_.at(configs_[c][static_cast<std::size_t>(i)])]) {
            pick[static_cast<std::size_t>(i)] = w;
            self(self, i + 1);
        }
    };
    rec(rec, 0);

    const std::vector<int>* best = nullptr;
    std::uint32_t bestDepth = 0;
    bool haveWin = false;
    for (const auto& s : succ) {
        std::size_t p = posIndex(configIdx_.at(s), r, 1);
        bool caught = std::binary_search(s.begin(), s.end(), robber);
        std::uint32_t d = caught ? 0 : depth_[p];
        bool w = caught || win_[p];
        if (!w) continue;
        if (!haveWin || d < bestDepth) {
            haveWin = true;
            bestDepth = d;
            best = &s;
        }
    }
    if (!best) return configs_[c]; // robber-won position: hold still
    return *best;
}

int Oracle::robberMove(const std::vector<int>& cops, int robber) const {
    std::size_t c = configIndex(cops);
    int best = robber;
    bool bestSafe = false;
    std::uint32_t bestDepth = 0;
    bool first = true;
    for (int rv : nbr_[robberIndex(robber)]) {
        bool caught = std::binary_search(configs_[c].begin(), configs_[c].end(), rv);
        std::size_t p = posIndex(c, robberIndex(rv), 0);
        bool safe = !caught && !win_[p];
        std::uint32_t d = caught ? 0 : depth_[p];
        if (first || (safe && !bestSafe) ||
            (safe == bestSafe && !safe && d > bestDepth)) {
            first = false;
            best = rv;
            bestSafe = safe;
            bestDepth = d;
        }
    }
    return best;
}

std::string Oracle::cachePath() const {
    const char* dir = std::getenv("COPSHIELD_CACHE");
    if (!dir || !*dir) return {};
    return std::string(dir) + "/" + std::to_string(hash_) + "-k" + std::to_string(k_) + ".bin";
}

bool Oracle::loadCache() {
    std::string path = cachePath();
    if (path.empty()) return false;
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    char magic[4];
    std::uint8_t version = 0;
    std::uint64_t h = 0, nPos = 0;
    std::int32_t k = 0;
    in.read(magic, 4);
    in.read(reinterpret_cast<char*>(&version), 1);
    in.read(reinterpret_cast<char*>(&h), 8);
    in.read(reinterpret_cast<char*>(&k), 4);
    in.read(reinterpret_cast<char*>(&nPos), 8);
    std::size_t expect = configs_.size() * verts_.size() * 2;
    if (!in || std::string(magic, 4) != "CSO1" || version != 1 || h != hash_ ||
        k != k_ || nPos != expect)
        return false;
    std::vector<char> bits(nPos);
    depth_.assign(nPos, 0);
    in.read(bits.data(), static_cast<std::streamsize>(nPos));
    in.read(reinterpret_cast<char*>(depth_.data()), static_cast<std::streamsize>(nPos * 4));
    if (!in) return false;
    win_.assign(nPos, false);
    for (std::size_t i = 0; i < nPos; ++i) win_[i] = bits[i] != 0;
    return true;
}

void Oracle::saveCache() const {
    std::string path = cachePath();
    if (path.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(std::filesystem::path(path).parent_path(), ec);
    std::ofstream out(path, std::ios::binary);
    if (!out) return;
    std::uint8_t version = 1;
    std::uint64_t nPos = win_.size();
    std::int32_t k = k_;
    out.write("CSO1", 4);
    out.write(reinterpret_cast<const char*>(&version), 1);
    out.write(reinterpret_cast<const char*>(&hash_), 8);
    out.write(reinterpret_cast<const char*>(&k), 4);
    out.write(reinterpret_cast<const char*>(&nPos), 8);
    std::vector<char> bits(win_.size());
    for (std::size_t i = 0; i < win_.size(); ++i) bits[i] = win_[i] ? 1 : 0;
    out.write(bits.data(), static_cast<std::streamsize>(bits.size()));
    out.write(reinterpret_cast<const char*>(depth_.data()),
              static_cast<std::streamsize>(depth_.size() * 4));
}

bool cop_win(const OnePlaneGraph& g, int k, std::size_t positionCap) {
    return Oracle(g, k, positionCap).copsWin();
}

std::optional<int> cop_number(const OnePlaneGraph& g, int kMax, std::size_t positionCap) {
    for (int k = 1; k <= kMax; ++k)
        if (cop_win(g, k, positionCap)) return k;
    return std::nullopt;
}

std::optional<std::vector<int>> dismantle_order(const OnePlaneGraph& g) {
    std::map<int, std::set<int>> closed;
    for (int v : g.vertices) closed[v] = {v};
    for (const Edge& e : g.edges) {
        closed[e.u].insert(e.v);
        closed[e.v].insert(e.u);
    }
    std::vector<int> order;
    bool removed = true;
    while (closed.size() > 1 && removed) {
        removed = false;
        for (auto it = closed.begin(); it != closed.end(); ++it) {
            int u = it->first;
            bool dom = false;
            for (const auto& [v, nv] : closed) {
                if (v == u) continue;
                // u is a corner: N[u] subseteq N[v]
                if (std::includes(nv.begin(), nv.end(), it->second.begin(), it->second.end())) {
                    dom = true;
                    break;
                }
            }
            if (dom) {
                order.push_back(u);
                closed.erase(u);
                for (auto& [v, nv] : closed) nv.erase(u);
                removed = true;
                break; // deterministic: always remove the least dominated id
            }
        }
    }
    if (closed.size() != 1) return std::nullopt;
    order.push_back(closed.begin()->first);
    return order;
}

bool dismantlable(const OnePlaneGraph& g) { return dismantle_order(g).has_value(); }

} // namespace copshield
