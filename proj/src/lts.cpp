#include "pdaproc/lts.hpp"

#include <sstream>

namespace pdaproc {

int Lts::add_state(std::string label, bool accepting, int depth) {
    states.push_back(State{std::move(label), accepting, false, depth});
    return int(states.size()) - 1;
}

void Lts::add_transition(int src, Action a, int dst) {
    transitions.emplace_back(src, std::move(a), dst);
}

std::vector<std::vector<std::pair<Action, int>>> Lts::out_adjacency() const {
    std::vector<std::vector<std::pair<Action, int>>> adj(states.size());
    for (const auto& [s, a, t] : transitions) adj[std::size_t(s)].emplace_back(a, t);
    return adj;
}

std::vector<int> Lts::accepting_states() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i].accepting) out.push_back(int(i));
    return out;
}

std::vector<int> Lts::frontier_states() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i].frontier) out.push_back(int(i));
    return out;
}

std::string write_aut(const Lts& g) {
    std::ostringstream os;
    os << "des (" << g.root << "," << g.transitions.size() << "," << g.states.size() << ")\n";
    for (const auto& [s, a, t] : g.transitions)
        os << "(" << s << ",\"" << a.name() << "\"," << t << ")\n";
    auto line = [&](const char* key, const std::vector<int>& xs) {
        if (xs.empty()) return;
        os << key << ": ";
        for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
        os << "\n";
    };
    line("accepting", g.accepting_states());
    line("frontier", g.frontier_states());
    return os.str();
}

namespace {
std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}
}  // namespace

std::string write_dot(const Lts& g) {
    std::ostringstream os;
    os << "digraph lts {\n  rankdir=LR;\n  node [shape=circle];\n";
    os << "  __root [shape=none, label=\"\"];\n";
    for (std::size_t i = 0; i < g.states.size(); ++i) {
        const auto& st = g.states[i];
        os << "  s" << i << " [label=\"" << dot_escape(st.label) << "\"";
        if (st.accepting) os << ", shape=doublecircle";
        if (st.frontier) os << ", style=dashed";
        os << "];\n";
    }
    os << "  __root -> s" << g.root << ";\n";
    for (const auto& [s, a, t] : g.transitions)
        os << "  s" << s << " -> s" << t << " [label=\"" << dot_escape(a.name()) << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string write_text(const Lts& g) {
    std::ostringstream os;
    os << g.states.size() << " states, " << g.transitions.size() << " transitions, root "
       << g.root << "\n";
    auto adj = g.out_adjacency();
    for (std::size_t i = 0; i < g.states.size(); ++i) {
        const auto& st = g.states[i];
        os << "  [" << i << "] " << st.label;
        if (st.accepting) os << "  (accepting)";
        if (st.frontier) os << "  (frontier)";
        os << "\n";
        for (const auto& [a, t] : adj[i]) os << "      --" << a.name() << "--> [" << t << "]\n";
    }
    return os.str();
}

}  // namespace pdaproc
