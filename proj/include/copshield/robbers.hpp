#pragma once

#include <iostream>
#include <map>
#include <memory>
#include <random>

#include "copshield/exact_oracle.hpp"
#include "copshield/game_engine.hpp"

namespace copshield {

class RandomRobber : public RobberStrategy {
public:
    explicit RandomRobber(std::uint64_t seed) : rng_(seed) {}
    std::string name() const override { return "random"; }
    int place(const OnePlaneGraph& g, const GameState& s) override;
    int move(const OnePlaneGraph& g, const GameState& s) override;

private:
    std::mt19937_64 rng_;
};

// maximize the minimum BFS distance to any cop, ties by lowest vertex id
class GreedyRobber : public RobberStrategy {
public:
    std::string name() const override { return "greedy"; }
    int place(const OnePlaneGraph& g, const GameState& s) override;
    int move(const OnePlaneGraph& g, const GameState& s) override;
};

// stays put while no cop is adjacent, flees greedily otherwise
class StallRobber : public RobberStrategy {
public:
    std::string name() const override { return "stall"; }
    int place(const OnePlaneGraph& g, const GameState& s) override;
    int move(const OnePlaneGraph& g, const GameState& s) override;
};

// Optimal play from the retrograde tables. Exact while the cops occupy at
// most `maxProjected` distinct vertices; with more, plays the exact policy
// against the nearest distinct cop vertices and never steps onto a cop.
class OracleRobber : public RobberStrategy {
public:
    explicit OracleRobber(int maxProjected = 4) : maxProjected_(maxProjected) {}
    std::string name() const override { return "oracle"; }
    int place(const OnePlaneGraph& g, const GameState& s) override;
    int move(const OnePlaneGraph& g, const GameState& s) override;

private:
    Oracle& oracleFor(const OnePlaneGraph& g, int k);
    std::vector<int> project(const OnePlaneGraph& g, const GameState& s) const;

    int maxProjected_;
    std::map<int, std::unique_ptr<Oracle>> oracles_;
};

class InteractiveRobber : public RobberStrategy {
public:
    InteractiveRobber(std::istream& in = std::cin, std::ostream& out = std::cout)
        : in_(in), out_(out) {}
    std::string name() const override { return "interactive"; }
    int place(const OnePlaneGraph& g, const GameState& s) override;
    int move(const OnePlaneGraph& g, const GameState& s) override;

private:
    int prompt(const OnePlaneGraph& g, const GameState& s, bool placement);
    std::istream& in_;
    std::ostream& out_;
};

// plays the exact-oracle cop policy (small graphs / few cops only)
class OracleCopStrategy : public CopStrategy {
public:
    std::string name() const override { return "oracle-policy"; }
    std::vector<int> place(const OnePlaneGraph& g, int copCount) override;
    std::vector<int> move(const OnePlaneGraph& g, const GameState& s) override;

private:
    std::unique_ptr<Oracle> oracle_;
};

// a baseline: every cop walks a shortest path toward the robber
class GreedyCopStrategy : public CopStrategy {
public:
    std::string name() const override { return "greedy"; }
    std::vector<int> place(const OnePlaneGraph& g, int copCount) override;
    std::vector<int> move(const OnePlaneGraph& g, const GameState& s) override;
};

// Per-cop realization of a canonical target multiset: finds an assignment
// where every cop stays or moves one step. Throws if none exists.
std::vector<int> match_moves(const OnePlaneGraph& g, const std::vector<int>& cops,
                             std::vector<int> target);

std::unique_ptr<RobberStrategy> make_robber(const std::string& name, std::uint64_t seed);

} // namespace copshield
