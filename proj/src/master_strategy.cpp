#include "copshield/master_strategy.hpp"

#include <algorithm>
#include <climits>
#include <utility>

namespace copshield {

namespace {

// the endpoint of a boundary entry on the robber side
int robber_end(const OnePlaneGraph& g, const XEdge& xe, int hVertex) {
    const Edge& ge = g.edgeRef(xe.edge);
    if (xe.part == 0) return ge.u;
    if (xe.part == 1) return ge.v;
    return ge.u == hVertex ? ge.v : ge.u;
}

void rebuild_sub(InterfacePath& ip) {
    if (!ip.xVerts.empty() && ip.xEdges.size() + 1 != ip.xVerts.size())
        throw Error("master: interface path vertex/edge count mismatch");
    ip.sub = PlanarSubgraph{};
    ip.sub.verts.insert(ip.xVerts.begin(), ip.xVerts.end());
    ip.sub.edges.insert(ip.xEdges.begin(), ip.xEdges.end());
}

// lowest G-vertex of a set
int lowest_g_vertex(const std::set<int>& verts) {
    if (verts.empty()) throw Error("master: empty robber territory");
    return *verts.begin();
}

std::set<int> g_vertices_of(const PlanarSubgraph& sub, int dummyBase) {
    std::set<int> out;
    for (int v : sub.verts)
        if (v < dummyBase) out.insert(v);
    return out;
}

bool disjoint(const std::set<int>& a, const std::set<int>& b) {
    for (int v : b)
        if (a.count(v)) return false;
    return true;
}

// attach a dummy endpoint via a half-edge when the path missed it
void attach_dummy(InterfacePath& ip, int dummy, int gEnd, const XEdge& he) {
    if (ip.sub.containsVertex(dummy)) return;
    if (!ip.xVerts.empty() && ip.xVerts.front() == gEnd) {
        ip.xVerts.insert(ip.xVerts.begin(), dummy);
        ip.xEdges.insert(ip.xEdges.begin(), he);
    } else if (!ip.xVerts.empty() && ip.xVerts.back() == gEnd) {
        ip.xVerts.push_back(dummy);
        ip.xEdges.push_back(he);
    } else {
        throw Error("master: crossing endpoint is not at the end of the path");
    }
    rebuild_sub(ip);
}

CycleInfo make_cycle(InterfacePath p1, InterfacePath p2, std::vector<XEdge> connectors) {
    CycleInfo c;
    c.p1 = std::move(p1);
    c.p2 = std::move(p2);
    c.connectors = std::move(connectors);
    c.sub = c.p1.sub;
    c.sub.unite(c.p2.sub);
    for (const XEdge& xe : c.connectors) c.sub.edges.insert(xe);
    return c;
}

} // namespace

std::vector<int> walk_edges(const OnePlaneGraph& g, const std::vector<int>& walkG) {
    std::vector<int> out;
    auto adj = g.adjacency();
    for (std::size_t i = 0; i + 1 < walkG.size(); ++i) {
        int best = -1;
        for (auto [w, e] : adj.at(walkG[i]))
            if (w == walkG[i + 1] && (best < 0 || e < best)) best = e;
        if (best < 0) throw Error("master: walk uses a non-edge");
        out.push_back(best);
    }
    return out;
}

InterfacePath expand_walk(const Planarization& p, const std::vector<int>& walkG,
                          const std::vector<int>& edgeIds, bool reorient) {
    if (walkG.empty()) throw Error("master: empty walk");
    if (edgeIds.size() + 1 != walkG.size()) throw Error("master: walk/edge size mismatch");

    std::vector<int> seq{walkG.front()};
    std::vector<XEdge> es;
    for (std::size_t i = 0; i < edgeIds.size(); ++i) {
        int e = edgeIds[i];
        const Edge& ge = p.base.edgeRef(e);
        int ci = p.base.crossingOf(e);
        if (ci < 0) {
            es.push_back({e, -1});
            seq.push_back(walkG[i + 1]);
        } else {
            int d = p.dummyOf(ci);
            if (walkG[i] == ge.u) {
                es.push_back({e, 0});
                seq.push_back(d);
                es.push_back({e, 1});
            } else {
                es.push_back({e, 1});
                seq.push_back(d);
                es.push_back({e, 0});
            }
            seq.push_back(walkG[i + 1]);
        }
    }

    // short-cut loops so the G^x path is simple
    InterfacePath ip;
    ip.walkG = walkG;
    ip.edgeIds = edgeIds;
    std::map<int, std::size_t> pos;
    for (std::size_t k = 0; k < seq.size(); ++k) {
        int v = seq[k];
        auto it = pos.find(v);
        if (it != pos.end()) {
            while (ip.xVerts.size() - 1 > it->second) {
                pos.erase(ip.xVerts.back());
                ip.xVerts.pop_back();
                ip.xEdges.pop_back();
            }
        } else {
            if (!ip.xVerts.empty()) ip.xEdges.push_back(es[k - 1]);
            pos[v] = ip.xVerts.size();
            ip.xVerts.push_back(v);
        }
    }
    if (reorient && ip.xVerts.back() < ip.xVerts.front()) {
        std::reverse(ip.xVerts.begin(), ip.xVerts.end());
        std::reverse(ip.xEdges.begin(), ip.xEdges.end());
        std::reverse(ip.walkG.begin(), ip.walkG.end());
        std::reverse(ip.edgeIds.begin(), ip.edgeIds.end());
    }
    rebuild_sub(ip);
    return ip;
}

std::array<int, 5> MasterCopStrategy::squadArr(int sq) const {
    return {7 * sq, 7 * sq + 1, 7 * sq + 2, 7 * sq + 3, 7 * sq + 4};
}

int MasterCopStrategy::takeFreeSquad() {
    if (freeSquads_.empty()) throw Error("master: no free squad available");
    int sq = *freeSquads_.begin();
    freeSquads_.erase(sq);
    return sq;
}

std::set<int> MasterCopStrategy::assignedCops() const {
    std::set<int> out;
    for (const auto& [sq, guard] : guards_) {
        for (int c : guard.squad()) out.insert(c);
        for (auto [cop, v] : guard.stationaries()) out.insert(cop);
    }
    for (const Lockstep& l : locksteps_) out.insert(l.cop);
    for (auto [cop, v] : parked_) out.insert(cop);
    return out;
}

const PlanarSubgraph& MasterCopStrategy::currentJ() const {
    if (pathJ_) return pathJ_->sub;
    if (cycleJ_) return cycleJ_->sub;
    throw Error("master: no interface configuration");
}

std::vector<int> MasterCopStrategy::place(const OnePlaneGraph& g, int copCount) {
    if (copCount < 21) throw Error("strategy21 needs at least 21 cops");
    g_ = g;
    p_ = planarize(g);
    copCount_ = copCount;
    eta_ = 0;
    L_ = PlanarSubgraph{};
    booted_ = false;
    if (g.vertices.empty()) throw Error("strategy21: empty graph");
    return std::vector<int>(static_cast<std::size_t>(copCount), *g.vertices.begin());
}

void MasterCopStrategy::bootstrap_at(int root, const std::string& label) {
    int sq = takeFreeSquad();
    guards_.emplace(sq, PathGuard(g_, g_, std::vector<int>{root}, squadArr(sq)));
    Pending pend;
    pend.deploySquad = sq;
    pend.kind = 'P';
    pend.newJ.walkG = {root};
    pend.newJ.xVerts = {root};
    pend.newJ.squad = sq;
    rebuild_sub(pend.newJ);
    pend.addToL = pend.newJ.sub;
    pend.rec.eta = eta_ + 1;
    pend.rec.label = label;
    pend.rec.anchors["root"] = root;
    pending_ = std::move(pend);
    events_.push_back({"case", {{"eta", eta_ + 1}, {"label", label}, {"root", root}}});
}

OnePlaneGraph MasterCopStrategy::case_graph(const TerritoryView& view,
                                            const std::vector<int>& gAnchors,
                                            const std::vector<int>& extraEdges) const {
    OnePlaneGraph out;
    out.vertices = view.robberComponent;
    std::set<int> eids = view.componentEdges;
    for (int w : gAnchors) {
        out.vertices.insert(w);
        auto it = view.boundary.find(w);
        if (it != view.boundary.end())
            for (const XEdge& xe : it->second) eids.insert(xe.edge);
    }
    for (int e : extraEdges) {
        eids.insert(e);
        const Edge& ge = g_.edgeRef(e);
        out.vertices.insert(ge.u);
        out.vertices.insert(ge.v);
    }
    for (int e : eids) out.edges.push_back(g_.edgeRef(e));
    std::sort(out.edges.begin(), out.edges.end(),
              [](const Edge& a, const Edge& b) { return a.id < b.id; });
    for (auto [a, b] : g_.crossings)
        if (eids.count(a) && eids.count(b)) out.crossings.push_back({a, b});
    return out;
}

void MasterCopStrategy::deploy(OnePlaneGraph ambient, const std::vector<int>& pathG,
                               const std::vector<std::pair<int, int>>& stationaries) {
    int sq = pending_->deploySquad;
    auto [it, ok] = guards_.emplace(sq, PathGuard(g_, std::move(ambient), pathG, squadArr(sq)));
    if (!ok) throw Error("master: deploy squad already guarding");
    for (auto [slot, v] : stationaries) it->second.addStationary(7 * sq + 5 + slot, v);
}

void MasterCopStrategy::case_one(const TerritoryView& view, int a, std::vector<int> freeAfter,
                                 const std::string& prefix, int eta) {
    bool isG = !p_->isDummy(a);
    int v = lowest_g_vertex(view.robberComponent);

    Pending pend;
    pend.kind = 'P';
    pend.deploySquad = takeFreeSquad();
    pend.freeAfter = std::move(freeAfter);
    pend.rec.eta = eta;
    pend.rec.label = prefix.size() == 2 ? prefix : prefix + (isG ? "1" : "2");
    pend.rec.anchors["a"] = a;
    pend.rec.anchors["v"] = v;
    pending_ = std::move(pend);

    if (isG) {
        OnePlaneGraph H = case_graph(view, {a}, {});
        std::vector<int> path = shortest_path(H, a, v);
        if (path.empty()) throw Error("master: case-1 anchor cannot reach the territory");
        pending_->newJ = expand_walk(*p_, path, walk_edges(H, path));
        deploy(std::move(H), path, {});
    } else {
        Crossing c = crossing_at(g_, p_->crossingOfDummy(a));
        const auto& bnd = view.boundary.at(a);
        int a1 = INT_MAX;
        for (const XEdge& xe : bnd) a1 = std::min(a1, robber_end(g_, xe, a));
        bool onA = a1 == c.au || a1 == c.av;
        int a2 = onA ? std::min(c.bu, c.bv) : std::min(c.au, c.av);
        pending_->rec.anchors["a1"] = a1;
        pending_->rec.anchors["a2"] = a2;
        OnePlaneGraph H = case_graph(view, {}, {c.edgeA, c.edgeB});
        std::vector<int> path = shortest_path(H, a1, v);
        if (path.empty()) throw Error("master: case-1 anchor cannot reach the territory");
        pending_->newJ = expand_walk(*p_, path, walk_edges(H, path));
        XEdge he{-1, -1};
        int heId = INT_MAX;
        for (const XEdge& xe : bnd)
            if (robber_end(g_, xe, a) == a1 && xe.edge < heId) {
                he = xe;
                heId = xe.edge;
            }
        attach_dummy(pending_->newJ, a, a1, he);
        deploy(std::move(H), path, {{0, a2}});
    }
    pending_->newJ.squad = pending_->deploySquad;
    pending_->addToL = pending_->newJ.sub;
    events_.push_back({"case", {{"eta", eta}, {"label", pending_->rec.label},
                                {"a", a}, {"v", v}}});
}

void MasterCopStrategy::case_two(const TerritoryView& view, const std::vector<int>& order,
                                 int u, int v, const InterfacePath& host, bool cycleCase,
                                 const std::string& prefix, int eta) {
    (void)order;
    bool uG = !p_->isDummy(u);
    bool vG = !p_->isDummy(v);

    auto sideAnchor = [&](int w) {
        int best = INT_MAX;
        for (const XEdge& xe : view.boundary.at(w)) best = std::min(best, robber_end(g_, xe, w));
        return best;
    };
    auto sideConnector = [&](int w, int target) {
        XEdge he{-1, -1};
        int heId = INT_MAX;
        for (const XEdge& xe : view.boundary.at(w))
            if (robber_end(g_, xe, w) == target && xe.edge < heId) {
                he = xe;
                heId = xe.edge;
            }
        return he;
    };

    Pending pend;
    pend.deploySquad = takeFreeSquad();
    pend.rec.eta = eta;
    pend.rec.anchors["u"] = u;
    pend.rec.anchors["v"] = v;
    if (cycleCase)
        pend.rec.label = "C3";
    else
        pend.rec.label = prefix + (uG && vG ? "1" : (!uG && !vG ? "3" : "2"));
    pending_ = std::move(pend);

    int from, to;
    OnePlaneGraph H;
    if (uG && vG) {
        H = case_graph(view, {u, v}, {});
        from = u;
        to = v;
    } else if (uG) {
        H = case_graph(view, {u}, {});
        from = u;
        to = sideAnchor(v);
        pending_->rec.anchors["b"] = to;
    } else if (vG) {
        H = case_graph(view, {v}, {});
        from = sideAnchor(u);
        to = v;
        pending_->rec.anchors["a"] = from;
    } else {
        H = case_graph(view, {}, {});
        from = sideAnchor(u);
        to = sideAnchor(v);
        pending_->rec.anchors["a"] = from;
        pending_->rec.anchors["b"] = to;
    }
    std::vector<int> pathQ = shortest_path(H, from, to);
    if (pathQ.empty()) throw Error("master: case-2 anchors cannot be joined in H");

    // keep the u-side first: the expansion's orientation drives the cycle glue
    InterfacePath E = expand_walk(*p_, pathQ, walk_edges(H, pathQ), false);

    // trim anchor endpoints off the new interface and record the connectors
    std::vector<XEdge> connectors(2);
    InterfacePath newP = E;
    newP.walkG.clear();
    newP.edgeIds.clear();
    if (uG) {
        connectors[0] = newP.xEdges.front();
        newP.xVerts.erase(newP.xVerts.begin());
        newP.xEdges.erase(newP.xEdges.begin());
    } else {
        connectors[0] = sideConnector(u, from);
    }
    if (vG) {
        connectors[1] = newP.xEdges.back();
        newP.xVerts.pop_back();
        newP.xEdges.pop_back();
    } else {
        connectors[1] = sideConnector(v, to);
    }
    if (newP.xVerts.empty()) throw Error("master: new interface path is empty");
    rebuild_sub(newP);
    newP.squad = pending_->deploySquad;

    // P1: the sub-path of the host between u and v
    auto iu = std::find(host.xVerts.begin(), host.xVerts.end(), u) - host.xVerts.begin();
    auto iv = std::find(host.xVerts.begin(), host.xVerts.end(), v) - host.xVerts.begin();
    if (iu >= static_cast<long>(host.xVerts.size()) || iv >= static_cast<long>(host.xVerts.size()) || iu > iv)
        throw Error("master: case-2 anchors out of order on the host path");
    InterfacePath p1minus;
    p1minus.squad = host.squad;
    p1minus.xVerts.assign(host.xVerts.begin() + iu, host.xVerts.begin() + iv + 1);
    p1minus.xEdges.assign(host.xEdges.begin() + iu, host.xEdges.begin() + iv);
    rebuild_sub(p1minus);

    deploy(std::move(H), pathQ, {});

    if (!cycleCase) {
        // P-config case 2: the result is the cycle D = [P1, P2]
        pending_->kind = 'C';
        pending_->cyc = make_cycle(p1minus, newP, connectors);
        pending_->addToL = newP.sub;
        for (const XEdge& xe : connectors) pending_->addToL.edges.insert(xe);
        locksteps_.push_back({7 * pending_->deploySquad + 5, host.squad, false});
    } else {
        // C-config case 3: D_L = [P1^-, P3], D_R = [P3^+, P2]
        pending_->kind = '3';
        const InterfacePath& other = host.squad == cycleJ_->p1.squad ? cycleJ_->p2 : cycleJ_->p1;
        pending_->keepA = host.squad;
        pending_->keepB = other.squad;
        pending_->dl = make_cycle(p1minus, newP, connectors);

        InterfacePath p3plus;
        p3plus.squad = pending_->deploySquad;
        p3plus.xVerts.assign(host.xVerts.begin(), host.xVerts.begin() + iu + 1);
        p3plus.xEdges.assign(host.xEdges.begin(), host.xEdges.begin() + iu);
        p3plus.xEdges.push_back(connectors[0]);
        p3plus.xVerts.insert(p3plus.xVerts.end(), newP.xVerts.begin(), newP.xVerts.end());
        p3plus.xEdges.insert(p3plus.xEdges.end(), newP.xEdges.begin(), newP.xEdges.end());
        p3plus.xEdges.push_back(connectors[1]);
        p3plus.xVerts.insert(p3plus.xVerts.end(), host.xVerts.begin() + iv,
                             host.xVerts.end());
        p3plus.xEdges.insert(p3plus.xEdges.end(), host.xEdges.begin() + iv,
                             host.xEdges.end());
        rebuild_sub(p3plus);
        pending_->dr = make_cycle(p3plus, other, cycleJ_->connectors);
        pending_->addToL = newP.sub;
        for (const XEdge& xe : connectors) pending_->addToL.edges.insert(xe);
        locksteps_.push_back({7 * pending_->deploySquad + 5, host.squad, false});
        locksteps_.push_back({7 * pending_->deploySquad + 6, other.squad, false});
    }
    events_.push_back({"case", {{"eta", eta}, {"label", pending_->rec.label},
                                {"u", u}, {"v", v}}});
}

void MasterCopStrategy::start_iteration(const GameState& s) {
    TerritoryView view;
    try {
        view = robber_territory(*p_, currentJ(), s.robber);
    } catch (const Error&) {
        return; // robber stands on a guarded vertex; the pounce resolves it
    }
    if (check_ && !check_no_x(*p_, view))
        throw Error("master: robber territory has an x-crossing");

    auto hits = [&](const std::vector<int>& order) {
        std::vector<int> out;
        for (int w : order) {
            auto it = view.boundary.find(w);
            if (it != view.boundary.end() && !it->second.empty()) out.push_back(w);
        }
        return out;
    };

    int eta = eta_ + 1;
    if (pathJ_) {
        std::vector<int> h = hits(pathJ_->xVerts);
        if (h.empty()) {
            // sealed territory: restart the machinery inside it
            int v0 = lowest_g_vertex(view.robberComponent);
            guards_.clear();
            locksteps_.clear();
            parked_.clear();
            freeSquads_ = {0, 1, 2};
            bootstrap_at(v0, "endgame");
            return;
        }
        if (h.size() == 1)
            case_one(view, h.front(), {pathJ_->squad}, "P1.", eta);
        else
            case_two(view, pathJ_->xVerts, h.front(), h.back(), *pathJ_, false, "P2.", eta);
        return;
    }

    std::vector<int> h1 = hits(cycleJ_->p1.xVerts);
    std::vector<int> h2 = hits(cycleJ_->p2.xVerts);
    std::vector<int> owners{cycleJ_->p1.squad, cycleJ_->p2.squad};
    if (h1.empty() && h2.empty()) {
        int v0 = lowest_g_vertex(view.robberComponent);
        guards_.clear();
        locksteps_.clear();
        parked_.clear();
        freeSquads_ = {0, 1, 2};
        bootstrap_at(v0, "endgame");
        return;
    }
    if (h1.size() + h2.size() == 1) {
        case_one(view, h1.empty() ? h2.front() : h1.front(), owners, "C1", eta);
        return;
    }
    if (h1.size() == 1 && h2.size() == 1) {
        case_c2(view, h1.front(), h2.front(), eta);
        return;
    }
    const InterfacePath& host = h1.size() > 1 ? cycleJ_->p1 : cycleJ_->p2;
    const std::vector<int>& hh = h1.size() > 1 ? h1 : h2;
    case_two(view, host.xVerts, hh.front(), hh.back(), host, true, "C3", eta);
}

void MasterCopStrategy::case_c2(const TerritoryView& view, int a, int b, int eta) {
    bool aG = !p_->isDummy(a);
    bool bG = !p_->isDummy(b);

    Pending pend;
    pend.kind = 'P';
    pend.deploySquad = takeFreeSquad();
    pend.freeAfter = {cycleJ_->p1.squad, cycleJ_->p2.squad};
    pend.rec.eta = eta;
    pend.rec.label = aG && bG ? "C2.1" : (!aG && !bG ? "C2.3" : "C2.2");
    pend.rec.anchors["a"] = a;
    pend.rec.anchors["b"] = b;
    pending_ = std::move(pend);

    struct DummySide {
        int d = -1, near = -1, station = -1;
        XEdge he{-1, -1};
        int e1 = -1, e2 = -1;
    };
    auto resolve = [&](int w) {
        DummySide ds;
        ds.d = w;
        Crossing c = crossing_at(g_, p_->crossingOfDummy(w));
        ds.e1 = c.edgeA;
        ds.e2 = c.edgeB;
        const auto& bnd = view.boundary.at(w);
        ds.near = INT_MAX;
        for (const XEdge& xe : bnd) ds.near = std::min(ds.near, robber_end(g_, xe, w));
        bool onA = ds.near == c.au || ds.near == c.av;
        ds.station = onA ? std::min(c.bu, c.bv) : std::min(c.au, c.av);
        int heId = INT_MAX;
        for (const XEdge& xe : bnd)
            if (robber_end(g_, xe, w) == ds.near && xe.edge < heId) {
                ds.he = xe;
                heId = xe.edge;
            }
        return ds;
    };

    std::vector<int> gAnchors, extra;
    std::vector<std::pair<int, int>> stations;
    std::optional<DummySide> dsA, dsB;
    int from, to;
    if (aG) {
        gAnchors.push_back(a);
        from = a;
    } else {
        dsA = resolve(a);
        extra.push_back(dsA->e1);
        extra.push_back(dsA->e2);
        stations.push_back({static_cast<int>(stations.size()), dsA->station});
        from = dsA->near;
        pending_->rec.anchors["a1"] = dsA->near;
        pending_->rec.anchors["a2"] = dsA->station;
    }
    if (bG) {
        gAnchors.push_back(b);
        to = b;
    } else {
        dsB = resolve(b);
        extra.push_back(dsB->e1);
        extra.push_back(dsB->e2);
        stations.push_back({static_cast<int>(stations.size()), dsB->station});
        to = dsB->near;
        pending_->rec.anchors["b1"] = dsB->near;
        pending_->rec.anchors["b2"] = dsB->station;
    }

    OnePlaneGraph H = case_graph(view, gAnchors, extra);
    std::vector<int> path = shortest_path(H, from, to);
    if (path.empty()) throw Error("master: case-C2 anchors cannot be joined in H");
    pending_->newJ = expand_walk(*p_, path, walk_edges(H, path), false);
    if (dsA) attach_dummy(pending_->newJ, dsA->d, dsA->near, dsA->he);
    if (dsB) attach_dummy(pending_->newJ, dsB->d, dsB->near, dsB->he);
    pending_->newJ.squad = pending_->deploySquad;
    pending_->addToL = pending_->newJ.sub;
    deploy(std::move(H), path, stations);
    events_.push_back({"case", {{"eta", eta}, {"label", pending_->rec.label},
                                {"a", a}, {"b", b}}});
}

void MasterCopStrategy::maybe_finalize(const GameState& s, const std::vector<int>& moves) {
    (void)moves;
    auto it = guards_.find(pending_->deploySquad);
    if (it == guards_.end() || !it->second.active()) return;
    for (const Lockstep& l : locksteps_)
        if (!l.locked) return;
    finalize(s);
}

void MasterCopStrategy::finalize(const GameState& s) {
    Pending& pd = *pending_;
    std::vector<int> toFree = pd.freeAfter;

    if (pd.kind == 'P') {
        pathJ_ = pd.newJ;
        cycleJ_.reset();
    } else if (pd.kind == 'C') {
        cycleJ_ = pd.cyc;
        pathJ_.reset();
    } else {
        // case 3: which side of the split cycle holds the robber?
        TerritoryView viewL, viewR;
        try {
            viewL = robber_territory(*p_, pd.dl->sub, s.robber);
            viewR = robber_territory(*p_, pd.dr->sub, s.robber);
        } catch (const Error&) {
            return; // robber on a guarded vertex; retry after the pounce
        }
        int db = p_->dummyBase;
        bool insideL = disjoint(viewL.robberComponent, g_vertices_of(pd.dr->p2.sub, db));
        bool insideR = disjoint(viewR.robberComponent, g_vertices_of(pd.dl->p1.sub, db));
        if (insideL) {
            pd.rec.label = "C3a";
            cycleJ_ = pd.dl;
            toFree.push_back(pd.keepB);
        } else if (insideR) {
            pd.rec.label = "C3b";
            cycleJ_ = pd.dr;
            toFree.push_back(pd.keepA);
            // a dummy endpoint of the inner path lets the robber hop onto the
            // freed side; park spare cops on the landing vertices
            for (int w : {pd.dl->p1.xVerts.front(), pd.dl->p1.xVerts.back()}) {
                if (!p_->isDummy(w)) continue;
                Crossing c = crossing_at(g_, p_->crossingOfDummy(w));
                for (int x : c.endpoints()) {
                    if (!viewR.robberComponent.count(x)) continue;
                    int opp = x == c.au ? c.av : x == c.av ? c.au
                             : x == c.bu ? c.bv : c.bu;
                    std::set<int> used = assignedCops();
                    for (int cop = 0; cop < 21; ++cop)
                        if (!used.count(cop) && guards_.count(cop / 7)) {
                            parked_.push_back({cop, opp});
                            break;
                        }
                }
            }
        } else {
            throw Error("master: robber confined by neither side of the split");
        }
        pathJ_.reset();
    }

    for (int sq : toFree) {
        guards_.erase(sq);
        freeSquads_.insert(sq);
    }
    std::erase_if(locksteps_, [&](const Lockstep& l) {
        return !guards_.count(l.squad) || !guards_.count(l.cop / 7);
    });
    std::erase_if(parked_, [&](const std::pair<int, int>& pk) {
        return !guards_.count(pk.first / 7);
    });

    std::size_t before = L_.weight();
    L_.unite(pd.addToL);
    ++eta_;
    history_.push_back(pd.rec);
    events_.push_back({"iteration", {{"eta", eta_}, {"label", pd.rec.label},
                                     {"L_weight", L_.weight()}}});
    if (check_ && L_.weight() <= before && eta_ > 0 && before > 0)
        throw Error("master: guarded subgraph did not grow");
    pending_.reset();
    assert_invariants(s);
}

void MasterCopStrategy::assert_invariants(const GameState& s) {
    if (!check_) return;
    bool i1 = true, i2 = true, i3 = true, i4 = !freeSquads_.empty();
    const PlanarSubgraph& J = currentJ();
    // I1: the configuration's guards exist and are active
    std::vector<int> owners;
    if (pathJ_) owners = {pathJ_->squad};
    else owners = {cycleJ_->p1.squad, cycleJ_->p2.squad};
    for (int sq : owners) {
        auto it = guards_.find(sq);
        if (it == guards_.end() || !it->second.active()) i1 = false;
    }
    // I2: J inside L
    i2 = J.subsetOf(L_);
    // I3: the interface carries all adjacency of L to the territory
    try {
        TerritoryView vj = robber_territory(*p_, J, s.robber);
        TerritoryView vl = robber_territory(*p_, L_, s.robber);
        if (vj.robberComponent != vl.robberComponent) i3 = false;
        for (const auto& [w, es] : vl.boundary)
            if (!es.empty() && !J.containsVertex(w)) i3 = false;
    } catch (const Error&) {
        // the robber is being pounced; skip the territory comparison
    }
    events_.push_back({"invariants", {{"eta", eta_}, {"I1", i1}, {"I2", i2},
                                      {"I3", i3}, {"I4", i4}}});
    if (!(i1 && i2 && i3 && i4)) throw Error("master: iteration invariant violated");
}

std::vector<int> MasterCopStrategy::move(const OnePlaneGraph& g, const GameState& s) {
    (void)g;
    std::vector<int> moves = s.cops;
    if (s.robber < 0) return moves;

    int pc = pounce_cop(g_, s);
    if (pc >= 0) {
        moves[static_cast<std::size_t>(pc)] = s.robber;
        events_.push_back({"pounce", {{"cop", pc}, {"at", s.robber}}});
        return moves;
    }

    if (!booted_) {
        int root = -1;
        for (auto [v, d] : bfs_distances(g_, s.robber))
            if (d >= 0 && (root < 0 || v < root)) root = v;
        bootstrap_at(root, "bootstrap");
        booted_ = true;
    }

    for (auto& [sq, guard] : guards_) {
        auto ev = guard.step(s, moves, check_);
        events_.insert(events_.end(), ev.begin(), ev.end());
    }
    for (Lockstep& l : locksteps_) {
        int us = uStarCop(l.squad);
        int cur = s.cops[static_cast<std::size_t>(l.cop)];
        if (cur == s.cops[static_cast<std::size_t>(us)]) {
            moves[static_cast<std::size_t>(l.cop)] = moves[static_cast<std::size_t>(us)];
            l.locked = true;
        } else {
            moves[static_cast<std::size_t>(l.cop)] =
                next_step_toward(g_, cur, moves[static_cast<std::size_t>(us)]);
        }
    }
    for (auto [cop, v] : parked_)
        moves[static_cast<std::size_t>(cop)] =
            next_step_toward(g_, s.cops[static_cast<std::size_t>(cop)], v);

    if (pending_)
        maybe_finalize(s, moves);
    else
        start_iteration(s);
    return moves;
}

std::vector<TraceEvent> MasterCopStrategy::takeEvents() {
    return std::exchange(events_, {});
}

GammaPrepass gamma_prepass(const OnePlaneGraph& g) {
    GammaPrepass out;
    out.reduced = g;
    std::set<int> removed;
    for (int idx : detect_x_crossings(g)) {
        Crossing c = crossing_at(g, idx);
        out.parked.push_back(std::min(c.au, c.av));
        out.removedEdges.push_back(c.edgeA);
        removed.insert(c.edgeA);
    }
    std::erase_if(out.reduced.edges, [&](const Edge& e) { return removed.count(e.id) > 0; });
    std::erase_if(out.reduced.crossings, [&](const std::pair<int, int>& cr) {
        return removed.count(cr.first) || removed.count(cr.second);
    });
    if (out.reduced.rotation)
        for (auto& [v, ends] : *out.reduced.rotation)
            std::erase_if(ends, [&](const EdgeEnd& ee) { return removed.count(ee.edge) > 0; });
    return out;
}

std::vector<int> GammaCopStrategy::place(const OnePlaneGraph& g, int copCount) {
    play_ = g;
    prep_ = gamma_prepass(g);
    int gammaN = static_cast<int>(prep_.parked.size());
    if (copCount < gammaN + 21) throw Error("gamma21 needs gamma + 21 cops");
    KiteResult kr = augment_kites(prep_.reduced);
    for (const KiteRecord& rec : kr.kites)
        if (rec.inserted && !play_.joined(rec.pairJoined.first, rec.pairJoined.second))
            throw Error("gamma21: reduced graph needs a kite edge absent from the original");
    arena_ = kr.graph;
    innerCount_ = copCount - gammaN;
    std::vector<int> innerPos = inner_.place(arena_, innerCount_);

    // put the main force where parked cops do not already dominate
    std::set<int> dominated;
    auto adj = play_.adjacency();
    for (int pv : prep_.parked) {
        dominated.insert(pv);
        for (auto [w, e] : adj.at(pv)) dominated.insert(w);
    }
    std::map<int, int> comp;
    int nComp = 0;
    for (int v : arena_.vertices)
        if (!comp.count(v)) {
            for (auto [w, d] : bfs_distances(arena_, v))
                if (d >= 0) comp[w] = nComp;
            ++nComp;
        }
    std::map<int, std::pair<int, int>> best; // comp -> (undominated count, lowest such)
    for (int v : arena_.vertices)
        if (!dominated.count(v)) {
            auto& b = best[comp.at(v)];
            if (b.first == 0) b.second = v; // vertices iterate ascending
            ++b.first;
        }
    int root = innerPos.empty() ? -1 : innerPos.front();
    int bestCount = -1;
    for (auto& [c, b] : best)
        if (b.first > bestCount) {
            bestCount = b.first;
            root = b.second;
        }

    std::vector<int> pos(static_cast<std::size_t>(copCount), root);
    for (int i = 0; i < gammaN; ++i)
        pos[static_cast<std::size_t>(innerCount_ + i)] = prep_.parked[static_cast<std::size_t>(i)];
    return pos;
}

std::vector<int> GammaCopStrategy::move(const OnePlaneGraph& g, const GameState& s) {
    (void)g;
    std::vector<int> moves = s.cops;
    if (s.robber < 0) return moves;
    int pc = pounce_cop(play_, s);
    if (pc >= 0) {
        moves[static_cast<std::size_t>(pc)] = s.robber;
        return moves;
    }
    GameState inner = s;
    inner.cops.assign(s.cops.begin(), s.cops.begin() + innerCount_);
    std::vector<int> innerMoves = inner_.move(arena_, inner);
    for (int i = 0; i < innerCount_; ++i)
        moves[static_cast<std::size_t>(i)] = innerMoves[static_cast<std::size_t>(i)];
    return moves;
}

std::vector<TraceEvent> GammaCopStrategy::takeEvents() {
    return inner_.takeEvents();
}

} // namespace copshield
