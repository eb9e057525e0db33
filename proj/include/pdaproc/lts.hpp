#pragma once

#include <limits>
#include <string>
#include <vector>

#include "pdaproc/core.hpp"

namespace pdaproc {

// An explored process graph. States are opaque indices with display labels;
// `frontier` marks states whose outgoing behaviour was cut off by the
// exploration budget.
struct Lts {
    struct State {
        std::string label;
        bool accepting = false;
        bool frontier = false;
        int depth = 0;
    };

    std::vector<State> states;
    std::vector<std::tuple<int, Action, int>> transitions;
    int root = 0;

    // Depth up to which the graph is guaranteed complete from the root.
    int explored_depth = std::numeric_limits<int>::max();

    int add_state(std::string label, bool accepting, int depth);
    void add_transition(int src, Action a, int dst);

    std::vector<std::vector<std::pair<Action, int>>> out_adjacency() const;
    std::vector<int> accepting_states() const;
    std::vector<int> frontier_states() const;
    bool fully_explored() const { return frontier_states().empty(); }
};

// Aldebaran format extended with `accepting:` and `frontier:` trailer lines.
std::string write_aut(const Lts& g);
std::string write_dot(const Lts& g);
std::string write_text(const Lts& g);

}  // namespace pdaproc
