#include "pdaproc/bisim.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

#include "nlohmann/json.hpp"

namespace pdaproc {

namespace {

// Joint signature refinement. States carry an initial class key; each round
// refines by the multiset of (action, successor block) pairs. Frontier
// states are never refined (their outgoing behaviour is unknown).
struct Refiner {
    struct JState {
        std::string key;
        bool frontier = false;
        std::vector<std::pair<Action, int>> out;
    };
    std::vector<JState> states;
    std::vector<std::vector<int>> history;  // block ids per round

    int add(std::string key, bool frontier) {
        states.push_back({std::move(key), frontier, {}});
        return int(states.size()) - 1;
    }

    void run(int max_rounds) {
        std::size_t n = states.size();
        std::vector<int> block(n);
        {
            std::map<std::string, int> by_key;
            for (std::size_t i = 0; i < n; ++i) {
                auto [it, _] = by_key.emplace(states[i].key, int(by_key.size()));
                block[i] = it->second;
            }
        }
        history.push_back(block);
        for (int round = 0; round < max_rounds; ++round) {
            std::map<std::pair<int, std::vector<std::tuple<bool, std::string, int>>>, int> table;
            std::vector<int> next(n);
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<std::tuple<bool, std::string, int>> sig;
                if (!states[i].frontier) {
                    std::set<std::tuple<bool, std::string, int>> s;
                    for (const auto& [a, t] : states[i].out)
                        s.insert({a.tau, a.label, block[std::size_t(t)]});
                    sig.assign(s.begin(), s.end());
                }
                auto [it, _] = table.emplace(std::make_pair(block[i], sig), int(table.size()));
                next[i] = it->second;
            }
            // Refinement only splits blocks, so the partition is stable as
            // soon as the block count stops growing.
            int old_blocks = 1 + (n ? *std::max_element(block.begin(), block.end()) : -1);
            bool stable = int(table.size()) == old_blocks;
            history.push_back(next);
            block = next;
            if (stable) {
                // Pad remaining rounds with the fixpoint.
                while (int(history.size()) <= max_rounds) history.push_back(block);
                return;
            }
        }
    }
};

std::string std_key(const Lts::State& s) {
    std::string k = s.accepting ? "A" : "n";
    k += s.frontier ? "F" : "e";
    return k;
}

Refiner joint_refiner(const Lts& l, const Lts& r) {
    Refiner rf;
    for (const auto& s : l.states) rf.add(std_key(s), s.frontier);
    for (const auto& s : r.states) rf.add(std_key(s), s.frontier);
    int off = int(l.states.size());
    for (const auto& [s, a, t] : l.transitions) rf.states[std::size_t(s)].out.emplace_back(a, t);
    for (const auto& [s, a, t] : r.transitions)
        rf.states[std::size_t(s + off)].out.emplace_back(a, t + off);
    return rf;
}

// First round at which the two states land in different blocks, or -1.
int split_round(const Refiner& rf, int a, int b) {
    for (std::size_t r = 0; r < rf.history.size(); ++r)
        if (rf.history[r][std::size_t(a)] != rf.history[r][std::size_t(b)]) return int(r);
    return -1;
}

BisimWitness build_witness(const Refiner& rf, const Lts& l, const Lts& r, int off, int ls,
                           int rs, int round) {
    BisimWitness w;
    w.left_state = ls;
    w.right_state = rs;
    if (round == 0) {
        const auto& a = l.states[std::size_t(ls)];
        const auto& b = r.states[std::size_t(rs)];
        w.kind = (a.frontier != b.frontier) ? BisimWitness::Kind::FrontierMismatch
                                            : BisimWitness::Kind::AcceptMismatch;
        return w;
    }
    const auto& prev = rf.history[std::size_t(round - 1)];
    auto moves = [&](int joint) { return rf.states[std::size_t(joint)].out; };
    // Try a left move no right move matches, then the symmetric direction.
    for (int side = 0; side < 2; ++side) {
        int mover = side == 0 ? ls : rs + off;
        int other = side == 0 ? rs + off : ls;
        for (const auto& [a, tgt] : moves(mover)) {
            bool matched = false;
            std::vector<std::pair<int, int>> responses;  // (joint target, its round)
            for (const auto& [b, tgt2] : moves(other)) {
                if (!(a == b)) continue;
                int sr = split_round(rf, tgt, tgt2);
                if (sr < 0 || sr > round - 1) {
                    matched = true;
                    break;
                }
                responses.emplace_back(tgt2, sr);
            }
            if (matched) continue;
            w.kind = BisimWitness::Kind::Move;
            w.moving_side = side;
            w.act = a;
            w.move_target = side == 0 ? tgt : tgt - off;
            for (const auto& [resp, sr] : responses) {
                int nls = side == 0 ? tgt : resp;
                int nrs = side == 0 ? resp - off : tgt - off;
                w.responses.emplace_back(side == 0 ? resp - off : resp,
                                         build_witness(rf, l, r, off, nls, nrs, sr));
            }
            return w;
        }
    }
    // The split came from the initial keys at a later round only through
    // stability padding; treat as acceptance mismatch.
    w.kind = BisimWitness::Kind::AcceptMismatch;
    return w;
}

}  // namespace

KBisimVerdict k_bisimilar(const Lts& l, const Lts& r, int k) {
    if (k < 0) throw Error("k must be nonnegative");
    if (l.explored_depth < k || r.explored_depth < k)
        throw Error("insufficient exploration depth for k=" + std::to_string(k));
    Refiner rf = joint_refiner(l, r);
    rf.run(k);
    int off = int(l.states.size());
    KBisimVerdict v;
    v.k = k;
    int sr = split_round(rf, l.root, r.root + off);
    if (sr < 0 || sr > k) {
        v.equivalent = true;
        return v;
    }
    v.equivalent = false;
    v.witness = build_witness(rf, l, r, off, l.root, r.root, sr);
    return v;
}

bool replay_witness(const Lts& l, const Lts& r, const BisimWitness& w) {
    const auto& a = l.states[std::size_t(w.left_state)];
    const auto& b = r.states[std::size_t(w.right_state)];
    switch (w.kind) {
        case BisimWitness::Kind::AcceptMismatch: return a.accepting != b.accepting;
        case BisimWitness::Kind::FrontierMismatch: return a.frontier != b.frontier;
        case BisimWitness::Kind::Move: break;
    }
    const Lts& mover = w.moving_side == 0 ? l : r;
    const Lts& other = w.moving_side == 0 ? r : l;
    int from = w.moving_side == 0 ? w.left_state : w.right_state;
    int ofrom = w.moving_side == 0 ? w.right_state : w.left_state;
    if (mover.states[std::size_t(from)].frontier || other.states[std::size_t(ofrom)].frontier)
        return false;  // unexplored behaviour cannot justify a move
    bool move_exists = false;
    for (const auto& [s, act, t] : mover.transitions)
        if (s == from && act == w.act && t == w.move_target) move_exists = true;
    if (!move_exists) return false;
    // Every response of the other side must be listed and refuted.
    std::vector<int> otargets;
    for (const auto& [s, act, t] : other.transitions)
        if (s == ofrom && act == w.act) otargets.push_back(t);
    for (int t : otargets) {
        bool found = false;
        for (const auto& [rt, sub] : w.responses) {
            if (rt != t) continue;
            int nls = w.moving_side == 0 ? w.move_target : t;
            int nrs = w.moving_side == 0 ? t : w.move_target;
            if (sub.left_state != nls || sub.right_state != nrs) continue;
            if (replay_witness(l, r, sub)) found = true;
        }
        if (!found) return false;
    }
    return true;
}

std::string BisimWitness::format(const Lts& l, const Lts& r, int indent) const {
    std::ostringstream os;
    std::string pad(std::size_t(indent) * 2, ' ');
    const auto& a = l.states[std::size_t(left_state)];
    const auto& b = r.states[std::size_t(right_state)];
    switch (kind) {
        case Kind::AcceptMismatch:
            os << pad << "acceptance differs: " << a.label << (a.accepting ? " (accepting)" : "")
               << "  vs  " << b.label << (b.accepting ? " (accepting)" : "") << "\n";
            break;
        case Kind::FrontierMismatch:
            os << pad << "exploration frontier mismatch: " << a.label << " vs " << b.label
               << "\n";
            break;
        case Kind::Move: {
            os << pad << (moving_side == 0 ? "left" : "right") << " moves --" << act.name()
               << "--> "
               << (moving_side == 0 ? l.states[std::size_t(move_target)].label
                                    : r.states[std::size_t(move_target)].label)
               << " from " << a.label << " vs " << b.label << "\n";
            if (responses.empty()) {
                os << pad << "  no matching move on the other side\n";
            } else {
                for (const auto& [t, sub] : responses) {
                    os << pad << "  response --" << act.name() << "--> "
                       << (moving_side == 0 ? r.states[std::size_t(t)].label
                                            : l.states[std::size_t(t)].label)
                       << " fails:\n";
                    os << sub.format(l, r, indent + 2);
                }
            }
            break;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// JSON serialization of witnesses

namespace {
nlohmann::json witness_to_json_obj(const BisimWitness& w) {
    nlohmann::json j;
    j["kind"] = w.kind == BisimWitness::Kind::AcceptMismatch    ? "accept"
                : w.kind == BisimWitness::Kind::FrontierMismatch ? "frontier"
                                                                 : "move";
    j["left"] = w.left_state;
    j["right"] = w.right_state;
    if (w.kind == BisimWitness::Kind::Move) {
        j["side"] = w.moving_side;
        j["action"] = w.act.name();
        j["tau"] = w.act.tau;
        j["target"] = w.move_target;
        j["responses"] = nlohmann::json::array();
        for (const auto& [t, sub] : w.responses)
            j["responses"].push_back({{"target", t}, {"witness", witness_to_json_obj(sub)}});
    }
    return j;
}

BisimWitness witness_from_json_obj(const nlohmann::json& j) {
    BisimWitness w;
    std::string kind = j.at("kind");
    w.kind = kind == "accept"    ? BisimWitness::Kind::AcceptMismatch
             : kind == "frontier" ? BisimWitness::Kind::FrontierMismatch
                                  : BisimWitness::Kind::Move;
    w.left_state = j.at("left");
    w.right_state = j.at("right");
    if (w.kind == BisimWitness::Kind::Move) {
        w.moving_side = j.at("side");
        bool tau = j.value("tau", false);
        w.act = tau ? Action::silent() : Action::named(j.at("action"));
        w.move_target = j.at("target");
        for (const auto& r : j.at("responses"))
            w.responses.emplace_back(int(r.at("target")), witness_from_json_obj(r.at("witness")));
    }
    return w;
}
}  // namespace

std::string BisimWitness::to_json(int indent) const {
    return witness_to_json_obj(*this).dump(indent);
}

std::optional<BisimWitness> witness_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) return std::nullopt;
    try {
        return witness_from_json_obj(j);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

// ---------------------------------------------------------------------------
// Minimization

MinimizeResult partition_refine(const Lts& g) {
    if (!g.fully_explored())
        throw Error("partition_refine requires a fully explored graph (no frontier)");
    Refiner rf;
    for (const auto& s : g.states) rf.add(std_key(s), false);
    for (const auto& [s, a, t] : g.transitions) rf.states[std::size_t(s)].out.emplace_back(a, t);
    rf.run(int(g.states.size()) + 1);
    const auto& final_blocks = rf.history.back();
    int nblocks = 1 + *std::max_element(final_blocks.begin(), final_blocks.end());
    MinimizeResult res;
    res.block_of = final_blocks;
    res.quotient.states.resize(std::size_t(nblocks));
    std::vector<int> rep(std::size_t(nblocks), -1);
    std::vector<int> count(std::size_t(nblocks), 0);
    for (std::size_t i = 0; i < g.states.size(); ++i) {
        int b = final_blocks[i];
        ++count[std::size_t(b)];
        if (rep[std::size_t(b)] < 0) rep[std::size_t(b)] = int(i);
    }
    for (int b = 0; b < nblocks; ++b) {
        auto& st = res.quotient.states[std::size_t(b)];
        st.label = g.states[std::size_t(rep[std::size_t(b)])].label;
        if (count[std::size_t(b)] > 1)
            st.label += " (+" + std::to_string(count[std::size_t(b)] - 1) + ")";
        st.accepting = g.states[std::size_t(rep[std::size_t(b)])].accepting;
        st.depth = 0;
    }
    std::set<std::tuple<int, bool, std::string, int>> seen;
    for (const auto& [s, a, t] : g.transitions) {
        int bs = final_blocks[std::size_t(s)], bt = final_blocks[std::size_t(t)];
        if (seen.insert({bs, a.tau, a.label, bt}).second)
            res.quotient.add_transition(bs, a, bt);
    }
    res.quotient.root = final_blocks[std::size_t(g.root)];
    res.quotient.explored_depth = std::numeric_limits<int>::max();
    return res;
}

// ---------------------------------------------------------------------------
// Stateless bisimilarity via the (term, valuation)-instrumented graph

namespace {

std::string val_bits(const Valuation& v) {
    std::string s;
    for (int i = 0; i < v.nvars(); ++i) s.push_back(v.value(i) ? '1' : '0');
    return s.empty() ? "-" : s;
}

// Builds the graph whose transitions are labelled with (valuation, action,
// target valuation) and whose states carry consistency/acceptance
// signatures over all valuations.
Lts instrumented_lts(Semantics& sem, const std::vector<ExprP>& roots, int max_depth,
                     long max_states, std::vector<int>& root_ids) {
    Lts g;
    std::map<ExprP, int, ExprLess> index;
    std::deque<std::pair<ExprP, int>> queue;
    auto key_of = [&](const ExprP& t) {
        std::string cons = "C", acc = "A";
        for (const auto& v : sem.all_valuations()) {
            bool c = sem.cons(t, v);
            cons.push_back(c ? '1' : '0');
            acc.push_back(c && sem.accepts_val(t, v) ? '1' : '0');
        }
        return cons + acc;
    };
    auto intern = [&](const ExprP& t, int depth) {
        auto it = index.find(t);
        if (it != index.end()) return it->second;
        int id = g.add_state(print_expr(t, sem.spec().vars) + "|" + key_of(t), false, depth);
        index.emplace(t, id);
        queue.emplace_back(t, id);
        return id;
    };
    for (const auto& r : roots) root_ids.push_back(intern(r, 0));
    bool budget_hit = false;
    while (!queue.empty()) {
        auto [t, id] = queue.front();
        queue.pop_front();
        int depth = g.states[std::size_t(id)].depth;
        if (depth >= max_depth || budget_hit) {
            g.states[std::size_t(id)].frontier = true;
            continue;
        }
        for (const auto& v : sem.all_valuations()) {
            if (!sem.cons(t, v)) continue;
            for (const auto& s : sem.steps_val(t, v)) {
                if (long(g.states.size()) >= max_states) budget_hit = true;
                if (budget_hit && index.find(s.target) == index.end()) {
                    g.states[std::size_t(id)].frontier = true;
                    continue;
                }
                int tid = intern(s.target, depth + 1);
                g.add_transition(
                    id, Action::named(s.act.name() + "@" + val_bits(v) + ">" +
                                      val_bits(s.target_val)),
                    tid);
            }
        }
    }
    g.explored_depth = std::numeric_limits<int>::max();
    for (const auto& st : g.states)
        if (st.frontier) g.explored_depth = std::min(g.explored_depth, st.depth);
    return g;
}

StatelessVerdict stateless_core(const Spec& spec, const ExprP& p, const ExprP& q, int rounds,
                                int max_depth, long max_states, Effect effect, bool exact) {
    Semantics sem(spec, std::move(effect));
    std::vector<int> roots;
    Lts g = instrumented_lts(sem, {p, q}, max_depth, max_states, roots);
    if (exact && !g.fully_explored())
        throw Error("stateless_bisimilar: state budget exceeded (is the input recursion-free?)");
    Refiner rf;
    for (const auto& s : g.states) {
        // The signature part of the label is the class key.
        auto pos = s.label.rfind('|');
        rf.add(s.label.substr(pos + 1) + (s.frontier ? "F" : "e"), s.frontier);
    }
    for (const auto& [s, a, t] : g.transitions) rf.states[std::size_t(s)].out.emplace_back(a, t);
    int effective = exact ? int(g.states.size()) + 1 : rounds;
    rf.run(effective);
    StatelessVerdict v;
    int sr = split_round(rf, roots[0], roots[1]);
    v.bisimilar = sr < 0 || sr > effective;
    if (!v.bisimilar) {
        BisimWitness w = build_witness(rf, g, g, 0, roots[0], roots[1], sr);
        v.detail = w.format(g, g);
    }
    return v;
}

}  // namespace

StatelessVerdict stateless_bisimilar(const Spec& spec, const ExprP& p, const ExprP& q,
                                     Effect effect, long max_states) {
    if (!free_idents(p).empty() || !free_idents(q).empty())
        throw Error("stateless_bisimilar requires recursion-free expressions");
    return stateless_core(spec, p, q, 0, std::numeric_limits<int>::max() - 1, max_states,
                          std::move(effect), true);
}

StatelessVerdict stateless_k_bisimilar(const Spec& spec, const ExprP& p, const ExprP& q, int k,
                                       Bounds bounds, Effect effect) {
    return stateless_core(spec, p, q, k, k, bounds.max_states, std::move(effect), false);
}

// ---------------------------------------------------------------------------

BranchingProfile branching_profile(const Lts& g) {
    BranchingProfile bp;
    bp.out_degree.assign(g.states.size(), 0);
    bp.lower_bound.assign(g.states.size(), false);
    for (const auto& [s, a, t] : g.transitions) ++bp.out_degree[std::size_t(s)];
    for (std::size_t i = 0; i < g.states.size(); ++i) {
        bp.lower_bound[i] = g.states[i].frontier;
        bp.max = std::max(bp.max, bp.out_degree[i]);
    }
    return bp;
}

}  // namespace pdaproc
