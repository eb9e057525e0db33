#include "pdaproc/pda.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace pdaproc {

int Pda::state_index(const std::string& s) const {
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i] == s) return int(i);
    throw Error("unknown state: " + s);
}

int Pda::datum_index(const std::string& d) const {
    for (std::size_t i = 0; i < data.size(); ++i)
        if (data[i] == d) return int(i);
    throw Error("unknown data symbol: " + d);
}

std::vector<std::string> Pda::alphabet() const {
    if (declared_alphabet) return *declared_alphabet;
    std::set<std::string> labels;
    for (const auto& t : transitions)
        if (!t.act.tau) labels.insert(t.act.label);
    return {labels.begin(), labels.end()};
}

void Pda::validate() const {
    auto in_states = [&](int s) { return s >= 0 && s < int(states.size()); };
    if (!in_states(init)) throw Error("init state out of range");
    for (int f : finals)
        if (!in_states(f)) throw Error("final state out of range");
    for (const auto& t : transitions) {
        if (!in_states(t.src) || !in_states(t.dst)) throw Error("transition state out of range");
        if (t.pop && (*t.pop < 0 || *t.pop >= int(data.size())))
            throw Error("transition pop symbol out of range");
        for (int d : t.push)
            if (d < 0 || d >= int(data.size())) throw Error("transition push symbol out of range");
    }
}

bool Pda::operator==(const Pda& o) const {
    auto key = [](const PdaTransition& t) {
        return std::tuple(t.src, t.act.tau, t.act.label, t.pop, t.push, t.dst);
    };
    if (name != o.name || states != o.states || data != o.data || init != o.init ||
        finals != o.finals || declared_alphabet != o.declared_alphabet)
        return false;
    if (transitions.size() != o.transitions.size()) return false;
    for (std::size_t i = 0; i < transitions.size(); ++i)
        if (key(transitions[i]) != key(o.transitions[i])) return false;
    return true;
}

std::string print_config(const Pda& m, const Config& c) {
    std::ostringstream os;
    os << "(" << m.states[std::size_t(c.state)] << ",";
    if (c.stack.empty()) os << "eps";
    for (std::size_t i = 0; i < c.stack.size(); ++i)
        os << (i ? " " : "") << m.data[std::size_t(c.stack[i])];
    os << ")";
    return os.str();
}

std::vector<std::pair<Action, Config>> pda_steps(const Pda& m, const Config& c) {
    std::vector<std::pair<Action, Config>> out;
    for (const auto& t : m.transitions) {
        if (t.src != c.state) continue;
        if (c.stack.empty()) {
            if (t.pop) continue;  // empty-stack transitions only
            Config next{t.dst, t.push};
            out.emplace_back(t.act, std::move(next));
        } else {
            if (!t.pop || *t.pop != c.stack.front()) continue;
            Config next{t.dst, t.push};
            next.stack.insert(next.stack.end(), c.stack.begin() + 1, c.stack.end());
            out.emplace_back(t.act, std::move(next));
        }
    }
    return out;
}

bool pda_accepts(const Pda& m, const Config& c) { return m.finals.count(c.state) != 0; }

int branching_degree(const Pda& m) {
    // Key: (state, pop symbol or -1 for empty stack).
    std::map<std::pair<int, int>, int> count;
    for (const auto& t : m.transitions) ++count[{t.src, t.pop ? *t.pop : -1}];
    int best = 0;
    for (const auto& [_, n] : count) best = std::max(best, n);
    return best;
}

std::string print_pda(const Pda& m) {
    std::ostringstream os;
    auto list = [&](const std::vector<std::string>& xs) {
        for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? ", " : "") << xs[i];
    };
    os << "pda " << m.name << " {\n  states ";
    list(m.states);
    os << ";\n  init " << m.states[std::size_t(m.init)] << ";\n  finals";
    bool first = true;
    for (int f : m.finals) {
        os << (first ? " " : ", ") << m.states[std::size_t(f)];
        first = false;
    }
    os << ";\n";
    if (!m.data.empty()) {
        os << "  data ";
        list(m.data);
        os << ";\n";
    }
    if (m.declared_alphabet) {
        os << "  alphabet ";
        list(*m.declared_alphabet);
        os << ";\n";
    }
    for (const auto& t : m.transitions) {
        os << "  " << m.states[std::size_t(t.src)] << " --" << t.act.name() << "[";
        os << (t.pop ? m.data[std::size_t(*t.pop)] : "eps") << "/";
        if (t.push.empty()) os << "eps";
        for (std::size_t i = 0; i < t.push.size(); ++i)
            os << (i ? "," : "") << m.data[std::size_t(t.push[i])];
        os << "]--> " << m.states[std::size_t(t.dst)] << "\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace pdaproc
