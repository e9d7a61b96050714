#include <atomic>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "copshield/corpus.hpp"
#include "copshield/exact_oracle.hpp"
#include "copshield/master_strategy.hpp"
#include "copshield/robbers.hpp"

using namespace copshield;
using nlohmann::json;

namespace {

constexpr int kExitCapture = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInvariant = 4;
constexpr int kExitCap = 5;

struct GraphSource {
    std::string path;
    std::string recipe;

    OnePlaneGraph load() const {
        if (!path.empty() && !recipe.empty())
            throw Error("give either --graph or --recipe, not both");
        if (!path.empty()) return load_graph_file(path);
        if (!recipe.empty()) return build_recipe(recipe);
        throw Error("need --graph or --recipe");
    }
    void attach(CLI::App* cmd) {
        cmd->add_option("--graph", path, "graph JSON file");
        cmd->add_option("--recipe", recipe, "generator recipe, e.g. ghat:n=20:seed=7");
    }
};

std::unique_ptr<CopStrategy> make_cops(const std::string& name, int copCount) {
    if (name == "strategy21") return std::make_unique<MasterCopStrategy>();
    if (name == "gamma21") return std::make_unique<GammaCopStrategy>();
    if (name == "oracle") return std::make_unique<OracleCopStrategy>();
    if (name == "greedy") return std::make_unique<GreedyCopStrategy>();
    (void)copCount;
    throw Error("unknown cop strategy: " + name);
}

std::unique_ptr<RobberStrategy> make_robber(const std::string& name, std::uint64_t seed) {
    if (name == "greedy") return std::make_unique<GreedyRobber>();
    if (name == "random") return std::make_unique<RandomRobber>(seed);
    if (name == "stall") return std::make_unique<StallRobber>();
    if (name == "oracle") return std::make_unique<OracleRobber>();
    if (name == "interactive") return std::make_unique<InteractiveRobber>();
    throw Error("unknown robber strategy: " + name);
}

bool is_cap_error(const std::exception& e) {
    return std::string(e.what()).find("position cap") != std::string::npos;
}

void write_or_print(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

int cmd_validate(const GraphSource& src) {
    OnePlaneGraph g = src.load();
    ValidationReport rep = validate(g);
    json j{{"ok", rep.ok()}, {"issues", rep.issues}};
    std::cout << j.dump(2) << "\n";
    return rep.ok() ? 0 : kExitInvalid;
}

int cmd_planarize(const GraphSource& src) {
    OnePlaneGraph g = src.load();
    Planarization p = planarize(g);
    json edges = json::array();
    std::set<std::pair<int, XEdge>> seen;
    for (const auto& [v, nbrs] : p.adj)
        for (const auto& [w, xe] : nbrs)
            if (v < w)
                edges.push_back({{"from", v}, {"to", w}, {"edge", xe.edge}, {"part", xe.part}});
    json verts = json::array();
    for (int v : g.vertices) verts.push_back(v);
    json dummies = json::array();
    for (std::size_t i = 0; i < g.crossings.size(); ++i)
        dummies.push_back(p.dummyOf(static_cast<int>(i)));
    json j{{"dummy_base", p.dummyBase}, {"vertices", verts}, {"dummies", dummies},
           {"edges", edges}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_detect(const GraphSource& src) {
    OnePlaneGraph g = src.load();
    json xs = json::array();
    for (int i : detect_x_crossings(g)) {
        Crossing c = crossing_at(g, i);
        xs.push_back({{"index", i}, {"edges", {c.edgeA, c.edgeB}},
                      {"endpoints", c.endpoints()}});
    }
    json j{{"x_crossings", xs}, {"count", xs.size()}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_generate(const std::string& recipe, const std::string& out) {
    OnePlaneGraph g = build_recipe(recipe);
    write_or_print(save_graph(g), out);
    return 0;
}

struct SimConfig {
    GraphSource src;
    std::string cops = "strategy21";
    std::string robber = "greedy";
    int copCount = 0; // 0 = strategy default
    std::uint64_t seed = 0;
    int budget = 0; // 0 = default budget
    std::string tracePath;
};

int default_cop_count(const OnePlaneGraph& g, const std::string& cops) {
    if (cops == "strategy21") return 21;
    if (cops == "gamma21") return 21 + static_cast<int>(detect_x_crossings(g).size());
    return 1;
}

Trace run_sim(const OnePlaneGraph& g, const SimConfig& cfg) {
    int copCount = cfg.copCount > 0 ? cfg.copCount : default_cop_count(g, cfg.cops);
    int budget = cfg.budget > 0 ? cfg.budget : default_budget(g);
    auto cops = make_cops(cfg.cops, copCount);
    auto robber = make_robber(cfg.robber, cfg.seed);
    return run(g, copCount, *cops, *robber, budget, cfg.seed);
}

int cmd_simulate(const SimConfig& cfg) {
    OnePlaneGraph g = cfg.src.load();
    ValidationReport rep = validate(g);
    if (!rep.ok()) {
        for (const std::string& issue : rep.issues) std::cerr << issue << "\n";
        return kExitInvalid;
    }
    Trace t;
    try {
        t = run_sim(g, cfg);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return is_cap_error(e) ? kExitCap : kExitInvariant;
    }
    if (!cfg.tracePath.empty()) write_or_print(t.toJsonLines(), cfg.tracePath);
    std::cout << json{{"captured", t.captured}, {"rounds", t.rounds},
                      {"exit", t.exitCode}}.dump() << "\n";
    return t.exitCode;
}

int cmd_solve(const GraphSource& src, int maxCops) {
    OnePlaneGraph g = src.load();
    std::optional<int> k;
    try {
        k = cop_number(g, maxCops);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return is_cap_error(e) ? kExitCap : kExitInvalid;
    }
    if (!k) {
        std::cout << "> " << maxCops << "\n";
        return kExitBudget;
    }
    std::cout << *k << "\n";
    return 0;
}

// --- verify: property suites over a default corpus ---------------------------

struct SuiteResult {
    std::string name;
    int runs = 0;
    std::vector<std::string> failures;
};

std::vector<OnePlaneGraph> verify_corpus() {
    std::vector<OnePlaneGraph> out;
    for (const char* id : {"K4X", "FIG1", "FIG2", "FIG3"}) out.push_back(named_graph(id));
    for (int n : {8, 12, 16})
        for (std::uint64_t seed = 0; seed < 4; ++seed)
            out.push_back(random_in_ghat(n, seed));
    return out;
}

SuiteResult suite_capture() {
    SuiteResult r{"capture"};
    for (const OnePlaneGraph& g : verify_corpus()) {
        ++r.runs;
        SimConfig cfg;
        cfg.cops = "strategy21";
        cfg.robber = "greedy";
        try {
            if (!run_sim(g, cfg).captured)
                r.failures.push_back("no capture within budget (n=" +
                                     std::to_string(g.vertices.size()) + ")");
        } catch (const Error& e) {
            r.failures.push_back(e.what());
        }
    }
    return r;
}

SuiteResult suite_invariants() {
    SuiteResult r{"invariants"};
    int verdicts = 0; // tiny graphs can end by pounce before any iteration
    for (const OnePlaneGraph& g : verify_corpus()) {
        ++r.runs;
        MasterCopStrategy cops; // invariant checks on: throws on violation
        GreedyRobber robber;
        try {
            Trace t = run(g, 21, cops, robber, default_budget(g));
            for (const json& rec : t.records)
                for (const json& ev : rec["events"])
                    if (ev.value("type", "") == "invariants") {
                        ++verdicts;
                        for (const char* key : {"I1", "I2", "I3", "I4"})
                            if (!ev[key].get<bool>())
                                r.failures.push_back(std::string(key) + " false");
                    }
        } catch (const Error& e) {
            r.failures.push_back(e.what());
        }
    }
    if (verdicts == 0) r.failures.push_back("no invariant verdicts across the corpus");
    return r;
}

SuiteResult suite_obs22() {
    SuiteResult r{"obs22"};
    for (const OnePlaneGraph& g : verify_corpus()) {
        ++r.runs;
        // every single-vertex territory of the kite-augmented graph is
        // x-crossing free
        OnePlaneGraph ga = augment_kites(g, false).graph;
        Planarization p = planarize(ga);
        for (int root : ga.vertices) {
            PlanarSubgraph h;
            h.verts.insert(root);
            for (int robber : ga.vertices) {
                if (robber == root) continue;
                TerritoryView view = robber_territory(p, h, robber);
                if (!check_no_x(p, view)) {
                    r.failures.push_back("territory of " + std::to_string(robber) +
                                         " vs {" + std::to_string(root) + "} has an x-crossing");
                    break;
                }
            }
        }
    }
    return r;
}

SuiteResult suite_obs32() {
    SuiteResult r{"obs32"};
    for (const OnePlaneGraph& g : verify_corpus()) {
        ++r.runs;
        // run a full game with the shadow-distance assertion armed; the guard
        // throws if the inequality ever fails after activation
        MasterCopStrategy cops;
        StallRobber robber;
        try {
            run(g, 21, cops, robber, default_budget(g));
        } catch (const Error& e) {
            r.failures.push_back(e.what());
        }
    }
    return r;
}

int cmd_verify(const std::string& suite) {
    std::vector<SuiteResult> results;
    if (suite == "all" || suite == "capture") results.push_back(suite_capture());
    if (suite == "all" || suite == "invariants") results.push_back(suite_invariants());
    if (suite == "all" || suite == "obs22") results.push_back(suite_obs22());
    if (suite == "all" || suite == "obs32") results.push_back(suite_obs32());
    if (results.empty()) throw Error("unknown suite: " + suite);
    json report = json::array();
    bool ok = true;
    for (const SuiteResult& r : results) {
        ok = ok && r.failures.empty();
        report.push_back({{"suite", r.name}, {"runs", r.runs},
                          {"pass", r.failures.empty()}, {"failures", r.failures}});
    }
    std::cout << json{{"ok", ok}, {"suites", report}}.dump(2) << "\n";
    return ok ? 0 : 1;
}

// --- batch: independent simulations across worker threads --------------------

struct BatchConfig {
    std::vector<std::string> recipes;
    std::string cops = "strategy21";
    std::string robber = "greedy";
    std::uint64_t seed = 0;
    int budget = 0;
    int threads = static_cast<int>(std::thread::hardware_concurrency());
};

int cmd_batch(const BatchConfig& cfg) {
    if (cfg.recipes.empty()) throw Error("batch needs at least one --recipe");
    std::vector<json> results(cfg.recipes.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> allCaptured{true};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < cfg.recipes.size();
             i = next.fetch_add(1)) {
            json r{{"recipe", cfg.recipes[i]}};
            try {
                OnePlaneGraph g = build_recipe(cfg.recipes[i]);
                SimConfig sc;
                sc.cops = cfg.cops;
                sc.robber = cfg.robber;
                sc.seed = cfg.seed;
                sc.budget = cfg.budget;
                Trace t = run_sim(g, sc);
                r["captured"] = t.captured;
                r["rounds"] = t.rounds;
                r["exit"] = t.exitCode;
                if (!t.captured) allCaptured = false;
            } catch (const std::exception& e) {
                r["error"] = e.what();
                allCaptured = false;
            }
            results[i] = std::move(r);
        }
    };
    int nThreads = std::max(1, std::min<int>(cfg.threads,
                                             static_cast<int>(cfg.recipes.size())));
    std::vector<std::thread> pool;
    for (int i = 0; i < nThreads; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    for (const json& r : results) std::cout << r.dump() << "\n";
    return allCaptured ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cops-and-robbers toolkit for 1-plane graphs"};
    app.require_subcommand(1);

    GraphSource valSrc, plnSrc, detSrc, solveSrc;
    auto* val = app.add_subcommand("validate", "check a graph file or recipe");
    valSrc.attach(val);
    auto* pln = app.add_subcommand("planarize", "print the planarization");
    plnSrc.attach(pln);
    auto* det = app.add_subcommand("detect", "list x-crossings");
    detSrc.attach(det);

    std::string genRecipe, genOut;
    auto* gen = app.add_subcommand("generate", "write a generated graph as JSON");
    gen->add_option("--recipe", genRecipe, "generator recipe")->required();
    gen->add_option("--out", genOut, "output file (default stdout)");

    SimConfig sim;
    auto* simc = app.add_subcommand("simulate", "play one game");
    sim.src.attach(simc);
    simc->add_option("--cops", sim.cops, "strategy21 | gamma21 | oracle");
    simc->add_option("--robber", sim.robber, "greedy | random | stall | oracle | interactive");
    simc->add_option("--cop-count", sim.copCount, "number of cops (default per strategy)");
    simc->add_option("--seed", sim.seed, "random seed");
    simc->add_option("--budget", sim.budget, "round budget (default 50*|V(G^x)|^2)");
    simc->add_option("--trace", sim.tracePath, "write the JSON-Lines trace here");

    int maxCops = 8;
    auto* sol = app.add_subcommand("solve", "compute the cop number exactly");
    solveSrc.attach(sol);
    sol->add_option("--max-cops", maxCops, "largest cop count to try");

    std::string suite = "all";
    auto* ver = app.add_subcommand("verify", "run the property suites");
    ver->add_option("--suite", suite, "all | capture | invariants | obs22 | obs32");

    BatchConfig batch;
    auto* bat = app.add_subcommand("batch", "run many simulations in parallel");
    bat->add_option("--recipe", batch.recipes, "recipes, one game each")->required();
    bat->add_option("--cops", batch.cops, "cop strategy");
    bat->add_option("--robber", batch.robber, "robber strategy");
    bat->add_option("--seed", batch.seed, "random seed");
    bat->add_option("--budget", batch.budget, "round budget");
    bat->add_option("--threads", batch.threads, "worker threads");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*val) return cmd_validate(valSrc);
        if (*pln) return cmd_planarize(plnSrc);
        if (*det) return cmd_detect(detSrc);
        if (*gen) return cmd_generate(genRecipe, genOut);
        if (*simc) return cmd_simulate(sim);
        if (*sol) return cmd_solve(solveSrc, maxCops);
        if (*ver) return cmd_verify(suite);
        if (*bat) return cmd_batch(batch);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return is_cap_error(e) ? kExitCap : kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitInvalid;
    }
    return 0;
}
