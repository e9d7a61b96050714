// Acceptance gate: one pass/fail line per criterion, exit 0 only when all
// seven hold. Runs at desk scale (minutes, single process).
#include <chrono>
#include <iostream>
#include <memory>
#include <sstream>
#include <vector>

#include "copshield/corpus.hpp"
#include "copshield/exact_oracle.hpp"
#include "copshield/master_strategy.hpp"
#include "copshield/robbers.hpp"

using namespace copshield;

namespace {

struct Criterion {
    std::string name;
    int checks = 0;
    std::vector<std::string> failures;

    void fail(const std::string& what) {
        if (failures.size() < 8) failures.push_back(what);
    }
    bool pass() const { return failures.empty() && checks > 0; }
};

std::vector<std::unique_ptr<RobberStrategy>> robber_set() {
    std::vector<std::unique_ptr<RobberStrategy>> out;
    out.push_back(std::make_unique<GreedyRobber>());
    out.push_back(std::make_unique<RandomRobber>(1));
    out.push_back(std::make_unique<RandomRobber>(2));
    out.push_back(std::make_unique<RandomRobber>(3));
    out.push_back(std::make_unique<StallRobber>());
    return out;
}

// criteria 1 and 3 share the same sweep: capture guarantee with the
// invariant machinery armed (any violated invariant or observation throws)
void criteria_1_and_3(Criterion& c1, Criterion& c3) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        int n = 6 + static_cast<int>(seed % 20); // 6..25
        OnePlaneGraph g;
        try {
            g = random_in_ghat(n, seed);
        } catch (const Error& e) {
            c1.fail("generator n=" + std::to_string(n) + " seed=" +
                    std::to_string(seed) + ": " + e.what());
            continue;
        }
        for (auto& robber : robber_set()) {
            ++c1.checks;
            ++c3.checks;
            std::string id = "n=" + std::to_string(n) + " seed=" + std::to_string(seed) +
                             " robber=" + robber->name();
            MasterCopStrategy cops; // checks on
            try {
                Trace t = run(g, 21, cops, *robber, default_budget(g));
                if (!t.captured) c1.fail("budget exhausted: " + id);
            } catch (const Error& e) {
                c3.fail(id + ": " + e.what());
            }
        }
    }
}

std::vector<std::pair<std::string, OnePlaneGraph>> small_corpus() {
    std::vector<std::pair<std::string, OnePlaneGraph>> out;
    for (const char* id : {"K4X", "FIG1", "FIG2", "FIG3", "CYCLE5", "PATH4"})
        out.push_back({id, named_graph(id)});
    for (int n : {6, 8, 10})
        for (std::uint64_t seed = 0; seed < 5; ++seed)
            out.push_back({"ghat:n=" + std::to_string(n) + ":seed=" + std::to_string(seed),
                           random_in_ghat(n, seed)});
    return out;
}

void criterion_2(Criterion& c) {
    for (auto& [id, g] : small_corpus()) {
        if (g.vertices.size() > 10) continue;
        ++c.checks;
        MasterCopStrategy cops;
        OracleRobber robber;
        try {
            if (!run(g, 21, cops, robber, default_budget(g)).captured)
                c.fail("oracle robber survived on " + id);
        } catch (const Error& e) {
            c.fail(id + ": " + e.what());
        }
    }
}

// Guarantee: an active five-cop path guard punishes, within one cops' turn, any
// robber move onto a guarded path vertex or across a guarded crossing point.
void criterion_4(Criterion& c) {
    std::vector<std::pair<std::string, OnePlaneGraph>> graphs;
    graphs.push_back({"K4X", named_graph("K4X")});
    for (int n : {6, 8, 10})
        for (std::uint64_t seed = 0; seed < 3; ++seed)
            graphs.push_back({"ghat:n=" + std::to_string(n) + ":seed=" + std::to_string(seed),
                              random_in_ghat(n, seed)});

    for (auto& [id, g] : graphs) {
        Planarization p = planarize(g);
        int root = *g.vertices.begin();
        for (int target : g.vertices) {
            std::vector<int> path = shortest_path(g, root, target);
            if (path.empty()) continue;
            for (int r : g.vertices) {
                PathGuard guard(g, g, path, {0, 1, 2, 3, 4});
                GameState s;
                s.cops.assign(5, root);
                s.robber = r;
                s.phase = GameState::Phase::CopsTurn;
                if (pounce_cop(g, s) >= 0) continue; // not a safe start
                // activation against a stationary robber
                bool activated = false;
                for (int turn = 0; turn < 200 && !activated; ++turn) {
                    std::vector<int> moves = s.cops;
                    guard.step(s, moves);
                    s.cops = moves;
                    ++s.round;
                    activated = guard.active();
                    if (pounce_cop(g, s) >= 0) break; // stationary robber caught
                }
                if (!activated) continue;
                if (pounce_cop(g, s) >= 0) continue;
                ++c.checks;
                // 2-ply: every violating robber move must be pounced
                for (auto [w, e] : g.adjacency().at(r)) {
                    bool ontoGuarded = guard.guardedQuery(w) && !p.isDummy(w);
                    int ci = g.crossingOf(e);
                    bool viaGuardedDummy = ci >= 0 && guard.guardedQuery(p.dummyOf(ci));
                    if (!ontoGuarded && !viaGuardedDummy) continue;
                    GameState after = s;
                    after.robber = w;
                    if (pounce_cop(g, after) < 0)
                        c.fail(id + ": robber " + std::to_string(r) + " -> " +
                               std::to_string(w) + " unpunished (path to " +
                               std::to_string(target) + ")");
                }
            }
        }
    }
}

void criterion_5(Criterion& c) {
    for (int gamma : {1, 2, 3}) {
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            int n = 14 + static_cast<int>(seed) + 2 * gamma; // <= 20
            OnePlaneGraph g = random_with_x(n, gamma, seed);
            if (static_cast<int>(detect_x_crossings(g).size()) != gamma) {
                c.fail("generator gave wrong gamma");
                continue;
            }
            for (auto& robber : robber_set()) {
                ++c.checks;
                GammaCopStrategy cops;
                std::string id = "n=" + std::to_string(n) + " gamma=" + std::to_string(gamma) +
                                 " seed=" + std::to_string(seed) + " robber=" + robber->name();
                try {
                    if (!run(g, 21 + gamma, cops, *robber, default_budget(g)).captured)
                        c.fail("budget exhausted: " + id);
                } catch (const Error& e) {
                    c.fail(id + ": " + e.what());
                }
            }
        }
    }
}

void criterion_6(Criterion& c) {
    auto expect = [&](const OnePlaneGraph& g, int want, const std::string& id) {
        ++c.checks;
        auto k = cop_number(g, std::max(want + 1, 3));
        if (!k || *k != want)
            c.fail(id + ": cop number " + (k ? std::to_string(*k) : "> max") +
                   ", expected " + std::to_string(want));
    };
    for (int n : {5, 8, 12})
        for (std::uint64_t seed : {0, 1}) expect(random_tree(n, seed), 1, "tree");
    for (int n = 4; n <= 8; ++n) expect(cycle_graph(n), 2, "C" + std::to_string(n));
    for (int n : {3, 4, 5, 6}) expect(complete_graph(n), 1, "K" + std::to_string(n));
    expect(named_graph("PETERSEN"), 3, "Petersen");
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        int n = 4 + static_cast<int>(seed % 9); // 4..12
        OnePlaneGraph g = random_chordal(n, seed);
        ++c.checks;
        bool oneWins = cop_win(g, 1);
        if (!oneWins) c.fail("chordal seed " + std::to_string(seed) + ": one cop loses");
        if (dismantlable(g) != oneWins)
            c.fail("chordal seed " + std::to_string(seed) + ": dismantlable disagrees");
    }
}

void criterion_7(Criterion& c) {
    for (std::uint64_t seed : {7, 42, 123}) {
        ++c.checks;
        OnePlaneGraph g = random_in_ghat(20, seed);
        auto once = [&] {
            MasterCopStrategy cops;
            GreedyRobber robber;
            return run(g, 21, cops, robber, default_budget(g)).toJsonLines();
        };
        if (once() != once())
            c.fail("trace differs on ghat:n=20:seed=" + std::to_string(seed));
    }
}

} // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    Criterion c1{"capture guarantee, 21 cops, 200 graphs x 5 robbers"};
    Criterion c2{"capture vs exact-oracle robber, n <= 10"};
    Criterion c3{"invariants I1-I4 and in-run observations hold"};
    Criterion c4{"path guard punishes every 2-ply violation"};
    Criterion c5{"gamma + 21 cops capture with x-crossings"};
    Criterion c6{"oracle ground truths (trees, cycles, cliques, Petersen, chordal)"};
    Criterion c7{"byte-identical traces on repeated runs"};

    criteria_1_and_3(c1, c3);
    criterion_2(c2);
    criterion_4(c4);
    criterion_5(c5);
    criterion_6(c6);
    criterion_7(c7);

    std::vector<Criterion*> all{&c1, &c2, &c3, &c4, &c5, &c6, &c7};
    bool ok = true;
    for (std::size_t i = 0; i < all.size(); ++i) {
        const Criterion& c = *all[i];
        std::cout << "criterion " << i + 1 << " [" << c.name << "]: "
                  << (c.pass() ? "PASS" : "FAIL") << " (" << c.checks << " checks)\n";
        for (const std::string& f : c.failures) std::cout << "    " << f << "\n";
        ok = ok && c.pass();
    }
    auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                    std::chrono::steady_clock::now() - t0).count();
    std::cout << (ok ? "ALL CRITERIA PASS" : "ACCEPTANCE FAILED")
              << " in " << secs << "s\n";
    return ok ? 0 : 1;
}
