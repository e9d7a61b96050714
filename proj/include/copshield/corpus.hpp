#pragma once

#include <cstdint>
#include <string>

#include "copshield/graph_model.hpp"

namespace copshield {

// Canonical instances: K4X, FIG1, FIG2, FIG3, PETERSEN, plus parameterized
// families spelled CYCLE5, PATH4, K6, GRID3x4.
OnePlaneGraph named_graph(const std::string& id);

// Random connected kite-covered 1-plane graph on n vertices: grid scaffold
// with pendant vertices, crossings as diagonal pairs inside quad faces.
OnePlaneGraph random_in_ghat(int n, std::uint64_t seed);

// As random_in_ghat, but gamma designated crossings have all four side edges
// removed, leaving exactly gamma x-crossings.
OnePlaneGraph random_with_x(int n, int gamma, std::uint64_t seed);

// Crossing-free abstract graphs for the oracle.
OnePlaneGraph cycle_graph(int n);
OnePlaneGraph path_graph(int n);
OnePlaneGraph complete_graph(int n);
OnePlaneGraph random_tree(int n, std::uint64_t seed);
OnePlaneGraph random_chordal(int n, std::uint64_t seed);

struct Recipe {
    std::string kind; // named | ghat | xghat | chordal | grid | cycle | path | tree | complete
    std::string id;   // for named
    int n = 0;
    int gamma = 1;
    int rows = 0, cols = 0;
    std::uint64_t seed = 0;
};

// "ghat:n=20:seed=7", "named:K4X", "xghat:n=20:gamma=3:seed=1", ...
Recipe parse_recipe(const std::string& text);
OnePlaneGraph build_recipe(const Recipe& r);
OnePlaneGraph build_recipe(const std::string& text);

} // namespace copshield
