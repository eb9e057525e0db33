#include "pdaproc/semantics.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace pdaproc {

// ---------------------------------------------------------------------------
// Guardedness

std::string UnguardedWitness::format() const {
    std::ostringstream os;
    os << (cyclic ? "unguarded cycle [" : "unguarded chain [");
    for (std::size_t i = 0; i < chain.size(); ++i) os << (i ? ", " : "") << chain[i];
    os << "]";
    return os.str();
}

namespace {

// Least fixpoint of "may accept under some valuation", per identifier.
std::map<std::string, bool> may_accept_table(const Spec& spec) {
    std::map<std::string, bool> acc;
    for (const auto& [id, _] : spec.equations) acc[id] = false;
    std::function<bool(const ExprP&)> may = [&](const ExprP& e) -> bool {
        switch (e->kind) {
            case ExprKind::Accept: return true;
            case ExprKind::Deadlock:
            case ExprKind::Prefix:
            case ExprKind::Na: return false;
            case ExprKind::Choice: return may(e->a) || may(e->b);
            case ExprKind::Seq:
            case ExprKind::SeqLegacy: return may(e->a) && may(e->b);
            case ExprKind::Guard:
            case ExprKind::Signal: return e->prop.satisfiable() && may(e->a);
            case ExprKind::Ident: {
                auto it = acc.find(e->ident);
                return it != acc.end() && it->second;
            }
        }
        return false;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [id, rhs] : spec.equations) {
            bool v = may(rhs);
            if (v && !acc[id]) {
                acc[id] = true;
                changed = true;
            }
        }
    }
    return acc;
}

}  // namespace

std::optional<UnguardedWitness> check_guarded(const Spec& spec) {
    auto may_acc = may_accept_table(spec);
    std::function<bool(const ExprP&)> may = [&](const ExprP& e) -> bool {
        switch (e->kind) {
            case ExprKind::Accept: return true;
            case ExprKind::Deadlock:
            case ExprKind::Prefix:
            case ExprKind::Na: return false;
            case ExprKind::Choice: return may(e->a) || may(e->b);
            case ExprKind::Seq:
            case ExprKind::SeqLegacy: return may(e->a) && may(e->b);
            case ExprKind::Guard:
            case ExprKind::Signal: return e->prop.satisfiable() && may(e->a);
            case ExprKind::Ident: return may_acc.at(e->ident);
        }
        return false;
    };

    // Dependencies through positions the step evaluator can consult.
    std::map<std::string, std::set<std::string>> deps;
    for (const auto& [id, rhs] : spec.equations) {
        auto& out = deps[id];
        std::function<void(const ExprP&)> go = [&](const ExprP& e) {
            switch (e->kind) {
                case ExprKind::Ident: out.insert(e->ident); break;
                case ExprKind::Prefix: break;  // guarded
                case ExprKind::Choice:
                    go(e->a);
                    go(e->b);
                    break;
                case ExprKind::Seq:
                case ExprKind::SeqLegacy:
                    go(e->a);
                    if (may(e->a)) go(e->b);
                    break;
                case ExprKind::Na:
                case ExprKind::Guard:
                case ExprKind::Signal: go(e->a); break;
                default: break;
            }
        };
        go(rhs);
    }

    // Reject exactly the cyclic dependencies (those make evaluation diverge).
    std::map<std::string, int> mark;  // 0 new, 1 on stack, 2 done
    std::vector<std::string> stack;
    std::optional<UnguardedWitness> found;
    std::function<void(const std::string&)> dfs = [&](const std::string& x) {
        if (found) return;
        mark[x] = 1;
        stack.push_back(x);
        for (const auto& y : deps[x]) {
            if (found) return;
            int m = mark.count(y) ? mark[y] : 0;
            if (m == 1) {
                UnguardedWitness w;
                auto it = std::find(stack.begin(), stack.end(), y);
                w.chain.assign(it, stack.end());
                w.cyclic = true;
                found = w;
                return;
            }
            if (m == 0) dfs(y);
        }
        stack.pop_back();
        mark[x] = 2;
    };
    for (const auto& [id, _] : spec.equations) {
        if (found) break;
        if (!mark.count(id) || mark[id] == 0) dfs(id);
    }
    return found;
}

// ---------------------------------------------------------------------------
// Effects

Effect reset_effect() {
    return [](const Action&, const Valuation& v) { return Valuation::all_true(v.nvars()); };
}

// ---------------------------------------------------------------------------
// Semantics session

namespace {
bool pair_less(const std::pair<ExprP, std::uint64_t>& a,
               const std::pair<ExprP, std::uint64_t>& b) {
    if (a.second != b.second) return a.second < b.second;
    return expr_cmp(a.first, b.first) < 0;
}
}  // namespace

Semantics::Semantics(const Spec& spec, Effect effect)
    : spec_(spec),
      effect_(std::move(effect)),
      cons_memo_(pair_less),
      accv_memo_(pair_less),
      stepsv_memo_(pair_less) {
    spec.validate();
    if (auto w = check_guarded(spec)) throw GuardednessError(*w);
}

bool Semantics::accepts_plain(const ExprP& e) {
    auto it = acc_memo_.find(e);
    if (it != acc_memo_.end()) return it->second;
    bool r = false;
    switch (e->kind) {
        case ExprKind::Accept: r = true; break;
        case ExprKind::Deadlock:
        case ExprKind::Prefix:
        case ExprKind::Na: r = false; break;
        case ExprKind::Choice: r = accepts_plain(e->a) || accepts_plain(e->b); break;
        case ExprKind::Seq:
        case ExprKind::SeqLegacy: r = accepts_plain(e->a) && accepts_plain(e->b); break;
        case ExprKind::Ident: r = accepts_plain(spec_.defn(e->ident)); break;
        case ExprKind::Guard:
        case ExprKind::Signal:
            throw Error("accepts_plain called on an expression with conditions or signals");
    }
    acc_memo_[e] = r;
    return r;
}

std::vector<PlainStep> Semantics::steps_plain(const ExprP& e) {
    auto it = steps_memo_.find(e);
    if (it != steps_memo_.end()) return it->second;
    std::vector<PlainStep> out;
    switch (e->kind) {
        case ExprKind::Deadlock:
        case ExprKind::Accept: break;
        case ExprKind::Prefix: out.push_back({e->act, e->a}); break;
        case ExprKind::Choice: {
            out = steps_plain(e->a);
            auto r = steps_plain(e->b);
            out.insert(out.end(), r.begin(), r.end());
            break;
        }
        case ExprKind::Na: out = steps_plain(e->a); break;
        case ExprKind::Ident: out = steps_plain(spec_.defn(e->ident)); break;
        case ExprKind::Seq: {
            for (const auto& s : steps_plain(e->a)) out.push_back({s.act, seq(s.target, e->b)});
            // Control passes only when the left argument accepts and is stuck.
            if (out.empty() && steps_plain(e->a).empty() && accepts_plain(e->a)) {
                auto r = steps_plain(e->b);
                out.insert(out.end(), r.begin(), r.end());
            }
            break;
        }
        case ExprKind::SeqLegacy: {
            for (const auto& s : steps_plain(e->a))
                out.push_back({s.act, seq_legacy(s.target, e->b)});
            if (accepts_plain(e->a)) {
                auto r = steps_plain(e->b);
                out.insert(out.end(), r.begin(), r.end());
            }
            break;
        }
        case ExprKind::Guard:
        case ExprKind::Signal:
            throw Error("steps_plain called on an expression with conditions or signals");
    }
    steps_memo_[e] = out;
    return out;
}

bool Semantics::cons(const ExprP& e, const Valuation& v) {
    auto key = std::make_pair(e, v.row());
    auto it = cons_memo_.find(key);
    if (it != cons_memo_.end()) return it->second;
    cons_memo_[key] = true;  // consistency rules are monotone; breaks no cycle
    bool r = true;
    switch (e->kind) {
        case ExprKind::Deadlock:
        case ExprKind::Accept:
        case ExprKind::Prefix: r = true; break;
        case ExprKind::Choice: r = cons(e->a, v) && cons(e->b, v); break;
        case ExprKind::Guard: r = !e->prop.eval(v) || cons(e->a, v); break;
        case ExprKind::Signal: r = e->prop.eval(v) && cons(e->a, v); break;
        case ExprKind::Na: r = cons(e->a, v); break;
        case ExprKind::Ident: r = cons(spec_.defn(e->ident), v); break;
        case ExprKind::Seq: {
            bool left_acc = accv(e->a, v);
            r = left_acc ? cons(e->b, v) : cons(e->a, v);
            break;
        }
        case ExprKind::SeqLegacy:
            throw Error("valuation semantics is undefined for sequential composition");
    }
    cons_memo_[key] = r;
    return r;
}

bool Semantics::accv(const ExprP& e, const Valuation& v) {
    auto key = std::make_pair(e, v.row());
    auto it = accv_memo_.find(key);
    if (it != accv_memo_.end()) return it->second;
    bool r = false;
    switch (e->kind) {
        case ExprKind::Accept: r = true; break;
        case ExprKind::Deadlock:
        case ExprKind::Prefix:
        case ExprKind::Na: r = false; break;
        case ExprKind::Choice:
            r = (accv(e->a, v) && cons(e->b, v)) || (accv(e->b, v) && cons(e->a, v));
            break;
        case ExprKind::Seq: r = accv(e->a, v) && accv(e->b, v); break;
        case ExprKind::Guard:
        case ExprKind::Signal: r = e->prop.eval(v) && accv(e->a, v); break;
        case ExprKind::Ident: r = accv(spec_.defn(e->ident), v); break;
        case ExprKind::SeqLegacy:
            throw Error("valuation semantics is undefined for sequential composition");
    }
    accv_memo_[key] = r;
    return r;
}

bool Semantics::accepts_val(const ExprP& e, const Valuation& v) { return accv(e, v); }

std::vector<ValStep> Semantics::stepsv(const ExprP& e, const Valuation& v) {
    auto key = std::make_pair(e, v.row());
    auto it = stepsv_memo_.find(key);
    if (it != stepsv_memo_.end()) return it->second;
    std::vector<ValStep> out;
    switch (e->kind) {
        case ExprKind::Deadlock:
        case ExprKind::Accept: break;
        case ExprKind::Prefix: {
            Valuation v2 = effect_(e->act, v);
            if (cons(e->a, v2)) out.push_back({e->act, e->a, v2});
            break;
        }
        case ExprKind::Choice: {
            if (cons(e->b, v))
                for (auto& s : stepsv(e->a, v)) out.push_back(s);
            if (cons(e->a, v))
                for (auto& s : stepsv(e->b, v)) out.push_back(s);
            break;
        }
        case ExprKind::Na: out = stepsv(e->a, v); break;
        case ExprKind::Guard:
        case ExprKind::Signal:
            if (e->prop.eval(v)) out = stepsv(e->a, v);
            break;
        case ExprKind::Ident: out = stepsv(spec_.defn(e->ident), v); break;
        case ExprKind::Seq: {
            auto left = stepsv(e->a, v);
            for (const auto& s : left) {
                ExprP tgt = seq(s.target, e->b);
                if (cons(tgt, s.target_val)) out.push_back({s.act, tgt, s.target_val});
            }
            if (left.empty() && accv(e->a, v))
                for (auto& s : stepsv(e->b, v)) out.push_back(s);
            break;
        }
        case ExprKind::SeqLegacy:
            throw Error("valuation semantics is undefined for sequential composition");
    }
    stepsv_memo_[key] = out;
    return out;
}

std::vector<ValStep> Semantics::steps_val(const ExprP& e, const Valuation& v) {
    if (!cons(e, v)) throw Error("steps_val called on an inconsistent state");
    return stepsv(e, v);
}

std::vector<Valuation> Semantics::all_valuations() const {
    int n = spec_.nvars();
    std::vector<Valuation> out;
    for (std::uint64_t r = 0; r < (std::uint64_t(1) << n); ++r) out.emplace_back(n, r);
    return out;
}

bool Semantics::consistent_somewhere(const ExprP& e) {
    for (const auto& v : all_valuations())
        if (cons(e, v)) return true;
    return false;
}

std::vector<PlainStep> Semantics::steps_derived(const ExprP& e) {
    std::vector<Valuation> vs;
    for (const auto& v : all_valuations())
        if (cons(e, v)) vs.push_back(v);
    if (vs.empty()) throw Error("no consistent valuation (root signal is false)");
    // Candidates from the first consistent valuation; keep the ones present
    // under every consistent valuation with the prescribed target valuation.
    std::vector<PlainStep> out;
    for (const auto& cand : stepsv(e, vs[0])) {
        bool everywhere = true;
        for (std::size_t i = 0; everywhere && i < vs.size(); ++i) {
            Valuation want = effect_(cand.act, vs[i]);
            bool here = false;
            for (const auto& s : stepsv(e, vs[i]))
                if (s.act == cand.act && expr_equal(s.target, cand.target) &&
                    s.target_val == want) {
                    here = true;
                    break;
                }
            everywhere = here;
        }
        if (!everywhere) continue;
        bool dup = false;
        for (const auto& s : out)
            if (s.act == cand.act && expr_equal(s.target, cand.target)) dup = true;
        if (!dup) out.push_back({cand.act, cand.target});
    }
    return out;
}

bool Semantics::accepts_derived(const ExprP& e) {
    bool any = false;
    for (const auto& v : all_valuations()) {
        if (!cons(e, v)) continue;
        any = true;
        if (!accv(e, v)) return false;
    }
    if (!any) throw Error("no consistent valuation (root signal is false)");
    return true;
}

// ---------------------------------------------------------------------------
// Exploration

namespace {

struct Explorer {
    Bounds bounds;
    Lts g;

    template <typename StateT, typename Less, typename StepsFn, typename AccFn,
              typename LabelFn>
    Lts run(const StateT& root, Less less, StepsFn steps_of, AccFn accepts, LabelFn label) {
        if (bounds.max_depth <= 0 || bounds.max_states <= 0)
            throw Error("exploration bounds must be positive");
        std::map<StateT, int, Less> index(less);
        std::deque<std::pair<StateT, int>> queue;
        auto intern = [&](const StateT& s, int depth) {
            auto it = index.find(s);
            if (it != index.end()) return it->second;
            int id = g.add_state(label(s), accepts(s), depth);
            index.emplace(s, id);
            queue.emplace_back(s, id);
            return id;
        };
        intern(root, 0);
        bool budget_hit = false;
        while (!queue.empty()) {
            auto [s, id] = queue.front();
            queue.pop_front();
            int depth = g.states[std::size_t(id)].depth;
            if (depth >= bounds.max_depth || budget_hit) {
                g.states[std::size_t(id)].frontier = true;
                continue;
            }
            for (const auto& [a, t] : steps_of(s)) {
                if (long(g.states.size()) >= bounds.max_states) budget_hit = true;
                if (budget_hit && index.find(t) == index.end()) {
                    // Cannot represent the successor: mark the source cut.
                    g.states[std::size_t(id)].frontier = true;
                    continue;
                }
                int tid = intern(t, depth + 1);
                g.add_transition(id, a, tid);
            }
        }
        g.explored_depth = std::numeric_limits<int>::max();
        for (const auto& st : g.states)
            if (st.frontier) g.explored_depth = std::min(g.explored_depth, st.depth);
        return g;
    }
};

}  // namespace

Lts explore_expr(const Spec& spec, const ExprP& root, Bounds bounds, SemanticsKind kind,
                 Effect effect) {
    Semantics sem(spec, std::move(effect));
    Explorer ex{bounds, {}};
    if (kind == SemanticsKind::Plain) {
        auto steps_of = [&](const ExprP& e) {
            std::vector<std::pair<Action, ExprP>> out;
            for (const auto& s : sem.steps_plain(e)) out.emplace_back(s.act, s.target);
            return out;
        };
        auto acc = [&](const ExprP& e) { return sem.accepts_plain(e); };
        auto label = [&](const ExprP& e) { return print_expr(e, spec.vars); };
        return ex.run(root, ExprLess{}, steps_of, acc, label);
    }
    if (!sem.consistent_somewhere(root))
        throw Error("no consistent valuation (root signal is false)");
    auto steps_of = [&](const ExprP& e) {
        std::vector<std::pair<Action, ExprP>> out;
        for (const auto& s : sem.steps_derived(e)) out.emplace_back(s.act, s.target);
        return out;
    };
    auto acc = [&](const ExprP& e) { return sem.accepts_derived(e); };
    auto label = [&](const ExprP& e) { return print_expr(e, spec.vars); };
    return ex.run(root, ExprLess{}, steps_of, acc, label);
}

Lts explore_spec(const Spec& spec, Bounds bounds, SemanticsKind kind, Effect effect) {
    return explore_expr(spec, ident(spec.init), bounds, kind, std::move(effect));
}

Lts explore_pda(const Pda& m, Bounds bounds) {
    m.validate();
    Explorer ex{bounds, {}};
    int bound = branching_degree(m);
    auto steps_of = [&](const Config& c) {
        auto ss = pda_steps(m, c);
        if (int(ss.size()) > bound) throw Error("configuration out-degree exceeds branching degree");
        return ss;
    };
    auto acc = [&](const Config& c) { return pda_accepts(m, c); };
    auto label = [&](const Config& c) { return print_config(m, c); };
    return ex.run(Config{m.init, {}}, std::less<Config>{}, steps_of, acc, label);
}

}  // namespace pdaproc
