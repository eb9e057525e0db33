#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "pdaproc/rewrite.hpp"

namespace pdaproc {

namespace {

using Path = std::vector<int>;

Path operator+(Path p, int i) {
    p.push_back(i);
    return p;
}

// Shared emit-and-apply scaffolding for derivations that start from an
// existing head normal form.
struct StepWriter {
    Semantics& sem;
    ExprP cur;
    std::vector<RewriteStep> trace;

    ExprP at(const Path& p) const {
        ExprP e = cur;
        for (int i : p) e = i == 0 ? e->a : e->b;
        if (!e) throw RewriteError("internal error: bad path");
        return e;
    }

    void ax(AxiomId id, bool rev, Path p, std::vector<Prop> props = {},
            std::vector<ExprP> terms = {}) {
        RewriteStep s;
        s.kind = RewriteStep::Kind::Axiom;
        s.axiom = id;
        s.reversed = rev;
        // Loss-restoring parameters for steps that erase subterms.
        if (!rev && terms.empty()) {
            ExprP t = at(p);
            if (id == AxiomId::C2 || id == AxiomId::SI2)
                terms = {t->a};
            else if (id == AxiomId::SI3 || id == AxiomId::R)
                terms = {t};
            else if (id == AxiomId::A7)
                terms = {t->b};
        }
        s.path = std::move(p);
        s.props = std::move(props);
        s.terms = std::move(terms);
        cur = apply_step(sem, cur, s);
        trace.push_back(std::move(s));
    }
};

}  // namespace

Hnf reduce_hnf(Semantics& sem, const Hnf& h) {
    const Spec& spec = sem.spec();
    int nv = spec.nvars();
    if (h.psi.is_false()) throw Error("reduce_hnf: the root signal is unsatisfiable");
    Valuation vt = Valuation::all_true(nv);

    std::vector<HnfSummand> kept;
    bool changed = false;
    Prop chi_star = h.chi & h.psi;
    if (chi_star != h.chi) changed = true;
    std::vector<bool> keep(h.summands.size());
    for (std::size_t i = 0; i < h.summands.size(); ++i) {
        const auto& s = h.summands[i];
        Prop g = s.guard & h.psi;
        bool live = g.satisfiable() && sem.cons(s.tail, vt);
        keep[i] = live;
        if (!live || g != s.guard) changed = true;
        if (live) kept.push_back({g, s.act, s.tail});
    }
    Hnf out;
    out.summands = kept;
    out.psi = h.psi;
    out.chi = chi_star;
    out.input = h.term;
    if (!changed) {
        out.term = h.term;
        return out;  // already reduced; empty trace
    }
    if (spec.vars.empty()) {
        // Signal-free head normal forms are always reduced.
        out.term = h.term;
        return out;
    }

    StepWriter w{sem, h.term, {}};
    if (h.summands.empty()) {
        // Only the acceptance condition needs normalizing.
        w.ax(AxiomId::A1, false, {});
        w.ax(AxiomId::A6, false, {});
        w.ax(AxiomId::SI7, true, {});
        w.ax(AxiomId::C4, true, {0});
        w.ax(AxiomId::A6, true, {});
        w.ax(AxiomId::A1, false, {});
        out.term = w.cur;
        out.trace = std::move(w.trace);
        return out;
    }

    // Ch(S, Sg(psi, G))  ->  Sg(psi, Gd(psi, Ch(G, S)))  and distribute.
    w.ax(AxiomId::A1, false, {});
    w.ax(AxiomId::SI4, false, {});
    w.ax(AxiomId::SI7, true, {});

    // Distribute the guard over the tree Ch(G, S); the shape is preserved,
    // so afterwards position [0,0] holds Gd(psi,G) and [0,1] the summands.
    std::function<void(const Path&)> distribute = [&](const Path& q) {
        if (w.at(q)->a->kind == ExprKind::Choice) {
            w.ax(AxiomId::C5, false, q);
            distribute(q + 0);
            distribute(q + 1);
        }
    };
    distribute(Path{0});

    // Leaves in order: [Gd(psi,G), Gd(psi,s_1), ..., Gd(psi,s_n)].
    std::vector<Path> leaf_paths;
    std::function<void(const Path&)> collect = [&](const Path& q) {
        if (w.at(q)->kind == ExprKind::Choice) {
            collect(q + 0);
            collect(q + 1);
        } else {
            leaf_paths.push_back(q);
        }
    };
    collect(Path{0});

    // sigma = "some variable is false": true everywhere except the all-true row.
    Prop conj = Prop::constant(nv, true);
    for (int i = 0; i < nv; ++i) conj = conj & Prop::variable(nv, i);
    Prop sigma = !conj;

    for (std::size_t li = 0; li < leaf_paths.size(); ++li) {
        const Path& q = leaf_paths[li];
        // Each leaf is Gd(psi, inner).
        w.ax(AxiomId::C4, true, q);
        if (li == 0) continue;  // acceptance leaf now Gd(psi & chi, 1)
        const auto& s = h.summands[li - 1];
        Prop g = s.guard & h.psi;
        if (!g.satisfiable()) {
            w.ax(AxiomId::C2, false, q);
            continue;
        }
        if (!sem.cons(s.tail, vt)) {
            // Expose the tail's root signal and cut the summand with the
            // reset axiom: the signal entails "some variable is false".
            Hnf ht = hnf(sem, s.tail);
            for (const auto& st : ht.trace) {
                RewriteStep moved = st;
                Path base = q + 0 + 0;
                base.insert(base.end(), st.path.begin(), st.path.end());
                moved.path = std::move(base);
                w.cur = apply_step(sem, w.cur, moved);
                w.trace.push_back(std::move(moved));
            }
            w.ax(AxiomId::A1, false, q + 0 + 0);
            w.ax(AxiomId::SI4, false, q + 0 + 0);
            if ((ht.psi & sigma) != ht.psi)
                throw RewriteError("internal error: inconsistent tail has a true signal");
            w.ax(AxiomId::SI5, true, q + 0 + 0, {sigma, ht.psi});
            w.ax(AxiomId::R, false, q + 0);
            w.ax(AxiomId::C2, true, q + 0, {}, {accept()});
            w.ax(AxiomId::C4, true, q);
            w.ax(AxiomId::C2, false, q);
        }
    }

    // Re-nest the summand part left-to-right and drop deadlock leaves.
    std::function<void(const Path&)> left_nest = [&](const Path& q) {
        if (w.at(q)->kind != ExprKind::Choice) return;
        while (w.at(q)->kind == ExprKind::Choice && w.at(q)->b->kind == ExprKind::Choice)
            w.ax(AxiomId::A2, false, q);
        if (w.at(q)->a->kind == ExprKind::Choice) left_nest(q + 0);
    };
    auto leaves_of = [&](const Path& q) {
        std::vector<Path> out;
        std::function<void(const Path&)> go = [&](const Path& p2) {
            if (w.at(p2)->kind == ExprKind::Choice) {
                go(p2 + 0);
                out.push_back(p2 + 1);
            } else {
                out.push_back(p2);
            }
        };
        go(q);
        return out;
    };
    auto swap_adjacent = [&](const Path& q, int i, int m) {
        if (i == 0) {
            Path p2 = q;
            for (int k = 0; k < m - 2; ++k) p2 = p2 + 0;
            w.ax(AxiomId::A1, false, p2);
            return;
        }
        Path p2 = q;
        for (int k = 0; k < m - 2 - i; ++k) p2 = p2 + 0;
        w.ax(AxiomId::A2, true, p2);
        w.ax(AxiomId::A1, false, p2 + 1);
        w.ax(AxiomId::A2, false, p2);
    };

    if (w.at(Path{0})->b->kind != ExprKind::Choice) {
        // Single summand position.
        if (w.at(Path{0, 1})->kind == ExprKind::Deadlock) w.ax(AxiomId::A6, false, {0});
    } else {
        Path spath{0, 1};
        left_nest(spath);
        for (;;) {
            auto ls = leaves_of(spath);
            int m = int(ls.size());
            int d = -1;
            for (int i = 0; i < m; ++i)
                if (w.at(ls[std::size_t(i)])->kind == ExprKind::Deadlock) d = i;
            if (d < 0) break;
            if (m == 1) {
                // All summands died: Ch(G*, 0) -> G*.
                w.ax(AxiomId::A6, false, {0});
                break;
            }
            for (int i = d; i < m - 1; ++i) swap_adjacent(spath, i, m);
            w.ax(AxiomId::A6, false, spath);
        }
    }

    if (w.at(Path{0})->kind == ExprKind::Guard) {
        // Everything died: Sg(psi, G*): repackage as Ch(0, Sg(psi,G*)).
        w.ax(AxiomId::A6, true, {});
        w.ax(AxiomId::A1, false, {});
    } else {
        // Sg(psi, Ch(G*, S*)) -> Ch(S*, Sg(psi, G*)).
        w.ax(AxiomId::SI4, true, {});
        w.ax(AxiomId::A1, false, {});
    }

    out.term = w.cur;
    out.trace = std::move(w.trace);
    auto parsed = parse_hnf_term(spec, out.term);
    if (!parsed) throw RewriteError("internal error: reduction left a non-canonical term");
    // Keep the canonical summand order of the reduction result.
    out.summands = parsed->summands;
    out.psi = parsed->psi;
    out.chi = parsed->chi;
    return out;
}

// ---------------------------------------------------------------------------
// Depth

DepthResult depth(Semantics& sem, const ExprP& expr, long state_budget) {
    // Longest chain of valuation-indexed steps; edges exist between terms
    // related under some valuation.
    std::map<ExprP, int, ExprLess> state;  // 1 = on stack, 2 = done
    std::map<ExprP, long, ExprLess> best;
    long visited = 0;
    bool infinite = false;

    std::function<long(const ExprP&)> go = [&](const ExprP& t) -> long {
        if (infinite) return 0;
        auto st = state.find(t);
        if (st != state.end()) {
            if (st->second == 1) {
                infinite = true;
                return 0;
            }
            return best[t];
        }
        if (++visited > state_budget) {
            infinite = true;
            return 0;
        }
        state[t] = 1;
        long d = 0;
        std::set<ExprP, ExprLess> targets;
        for (const auto& v : sem.all_valuations()) {
            if (!sem.cons(t, v)) continue;
            for (const auto& s : sem.steps_val(t, v)) targets.insert(s.target);
        }
        for (const auto& q : targets) d = std::max(d, 1 + go(q));
        state[t] = 2;
        best[t] = d;
        return d;
    };
    long d = go(expr);
    if (infinite) return {false, 0};
    return {true, d};
}

// ---------------------------------------------------------------------------
// Recursion-free decision procedure

namespace {

struct RfCtx {
    Semantics& sem;
    std::map<std::pair<ExprP, ExprP>, bool, std::function<bool(const std::pair<ExprP, ExprP>&,
                                                               const std::pair<ExprP, ExprP>&)>>
        memo;
    std::vector<std::string> context;

    explicit RfCtx(Semantics& s)
        : sem(s), memo([](const auto& a, const auto& b) {
              int c = expr_cmp(a.first, b.first);
              if (c) return c < 0;
              return expr_cmp(a.second, b.second) < 0;
          }) {}

    bool equal(const ExprP& p, const ExprP& q) {
        auto key = std::make_pair(p, q);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        bool r = compute(p, q);
        memo[key] = r;
        return r;
    }

    std::string pr(const ExprP& e) const { return print_expr(e, sem.spec().vars); }

    bool compute(const ExprP& p, const ExprP& q) {
        Hnf hp = hnf(sem, p);
        Hnf hq = hnf(sem, q);
        if (hp.psi.is_false() || hq.psi.is_false()) {
            if (hp.psi.is_false() != hq.psi.is_false()) {
                context.push_back("only one side has an unsatisfiable root signal: " + pr(p) +
                                  "  vs  " + pr(q));
                return false;
            }
            return true;  // both inconsistent everywhere
        }
        Hnf rp = reduce_hnf(sem, hp);
        Hnf rq = reduce_hnf(sem, hq);
        if (rp.psi != rq.psi) {
            context.push_back("root signals differ: [" + rp.psi.format(sem.spec().vars) +
                              "] vs [" + rq.psi.format(sem.spec().vars) + "] at " + pr(p) +
                              "  vs  " + pr(q));
            return false;
        }
        if (rp.chi != rq.chi) {
            context.push_back("acceptance conditions differ: [" +
                              rp.chi.format(sem.spec().vars) + "] vs [" +
                              rq.chi.format(sem.spec().vars) + "] at " + pr(p) + "  vs  " +
                              pr(q));
            return false;
        }
        return covers(rp, rq, p, q) && covers(rq, rp, q, p);
    }

    // Every summand of a must be covered by matching summands of b.
    bool covers(const Hnf& a, const Hnf& b, const ExprP& pa, const ExprP& pb) {
        for (const auto& s : a.summands) {
            Prop covered = Prop::constant(sem.spec().nvars(), false);
            for (const auto& t : b.summands) {
                if (!(s.act == t.act)) continue;
                if (!equal(s.tail, t.tail)) continue;
                covered = covered | t.guard;
            }
            if (!s.guard.implies(covered)) {
                Prop missing = s.guard & !covered;
                auto wit = missing.witness();
                std::string at = wit ? Valuation(sem.spec().nvars(), *wit).format(sem.spec().vars)
                                     : std::string("?");
                context.push_back("step '" + s.act.name() + "' to " + pr(s.tail) + " under " +
                                  at + " has no match: " + pr(pa) + "  vs  " + pr(pb));
                return false;
            }
        }
        return true;
    }
};

}  // namespace

std::string RfVerdict::format() const {
    if (equal) return "equal";
    std::ostringstream os;
    os << "distinguished:\n";
    for (auto it = context.rbegin(); it != context.rend(); ++it) os << "  " << *it << "\n";
    return os.str();
}

RfVerdict decide_bisim_rf(Semantics& sem, const ExprP& p, const ExprP& q) {
    if (!free_idents(p).empty() || !free_idents(q).empty())
        throw Error("decide_bisim_rf requires recursion-free expressions");
    RfCtx ctx(sem);
    RfVerdict v;
    v.equal = ctx.equal(p, q);
    if (!v.equal) v.context = ctx.context;
    return v;
}

}  // namespace pdaproc
