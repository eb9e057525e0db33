#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pdaproc/core.hpp"

namespace pdaproc {

// Pushdown automaton with acceptance by final state. Pop is a single datum
// or empty (the latter fires only on an empty stack); push is a string of
// data symbols, leftmost on top.
struct PdaTransition {
    int src = 0;
    Action act;
    std::optional<int> pop;  // nullopt = empty-stack test
    std::vector<int> push;   // leftmost = new top
    int dst = 0;
};

struct Pda {
    std::string name = "pda";
    std::vector<std::string> states;
    std::vector<std::string> data;
    std::optional<std::vector<std::string>> declared_alphabet;
    std::vector<PdaTransition> transitions;
    int init = 0;
    std::set<int> finals;

    int state_index(const std::string& s) const;
    int datum_index(const std::string& d) const;
    std::vector<std::string> alphabet() const;
    void validate() const;
    bool operator==(const Pda& o) const;
};

// A configuration: control state plus stack contents, leftmost on top.
struct Config {
    int state = 0;
    std::vector<int> stack;
    bool operator==(const Config& o) const { return state == o.state && stack == o.stack; }
    bool operator<(const Config& o) const {
        if (state != o.state) return state < o.state;
        return stack < o.stack;
    }
};

std::string print_config(const Pda& m, const Config& c);

// The two transition clauses of the configuration graph.
std::vector<std::pair<Action, Config>> pda_steps(const Pda& m, const Config& c);
bool pda_accepts(const Pda& m, const Config& c);

// Max number of transitions enabled at one (state, top-of-stack) pair; an
// upper bound on the out-degree of every configuration.
int branching_degree(const Pda& m);

std::string print_pda(const Pda& m);

}  // namespace pdaproc
