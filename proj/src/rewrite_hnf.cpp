#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "pdaproc/rewrite.hpp"

// Head normal form computation. The derivation follows the structure of the
// expression; every transformation is emitted as a rewrite step and applied
// to a working copy, so the recorded trace replays to the result by
// construction.

namespace pdaproc {

namespace {

using Path = std::vector<int>;

Path operator+(Path p, int i) {
    p.push_back(i);
    return p;
}
Path operator+(Path p, const Path& q) {
    p.insert(p.end(), q.begin(), q.end());
    return p;
}

class HnfEngine {
public:
    explicit HnfEngine(Semantics& sem)
        : sem_(sem), spec_(sem.spec()), sig_(!sem.spec().vars.empty()) {}

    Hnf run(const ExprP& input) {
        cur_ = input;
        trace_.clear();
        derive({});
        auto parsed = parse_hnf_term(spec_, cur_);
        if (!parsed) throw RewriteError("internal error: derivation left a non-canonical term");
        Hnf h = *parsed;
        h.input = input;
        h.trace = trace_;
        return h;
    }

private:
    struct Shape {
        int n = 0;
        Prop psi, chi;
    };

    Semantics& sem_;
    const Spec& spec_;
    bool sig_;
    ExprP cur_;
    std::vector<RewriteStep> trace_;

    Prop tru() const { return Prop::constant(spec_.nvars(), true); }
    Prop fls() const { return Prop::constant(spec_.nvars(), false); }

    ExprP at(const Path& p) const {
        ExprP e = cur_;
        for (int i : p) e = i == 0 ? e->a : e->b;
        if (!e) throw RewriteError("internal error: bad path");
        return e;
    }

    void emit(RewriteStep s) {
        cur_ = apply_step(sem_, cur_, s);
        trace_.push_back(std::move(s));
        if (trace_.size() > 5000000) throw RewriteError("derivation exceeds the step limit");
    }

    void ax(AxiomId id, bool rev, Path p, std::vector<Prop> props = {},
            std::vector<ExprP> terms = {}) {
        RewriteStep s;
        s.kind = RewriteStep::Kind::Axiom;
        s.axiom = id;
        s.reversed = rev;
        // Record what the right-hand side erases, so steps stay reversible.
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
        emit(std::move(s));
    }

    void unfold(Path p) {
        RewriteStep s;
        s.kind = RewriteStep::Kind::Unfold;
        s.ident = at(p)->ident;
        s.path = std::move(p);
        emit(std::move(s));
    }

    // --- sums -------------------------------------------------------------

    void left_nest(const Path& p) {
        if (at(p)->kind != ExprKind::Choice) return;
        while (at(p)->kind == ExprKind::Choice && at(p)->b->kind == ExprKind::Choice)
            ax(AxiomId::A2, false, p);
        if (at(p)->a->kind == ExprKind::Choice) left_nest(p + 0);
    }

    void right_nest(const Path& p) {
        if (at(p)->kind != ExprKind::Choice) return;
        while (at(p)->a->kind == ExprKind::Choice) ax(AxiomId::A2, true, p);
        if (at(p)->b->kind == ExprKind::Choice) right_nest(p + 1);
    }

    // Leaf paths of a fully left-nested sum, leftmost first.
    std::vector<Path> leaves(const Path& p) const {
        std::vector<Path> out;
        std::function<void(const Path&)> go = [&](const Path& q) {
            if (at(q)->kind == ExprKind::Choice) {
                go(q + 0);
                out.push_back(q + 1);
            } else {
                out.push_back(q);
            }
        };
        go(p);
        return out;
    }

    // Swaps leaves i and i+1 of the left-nested sum at p.
    void swap_adjacent(const Path& p, int i, int m) {
        if (i == 0) {
            Path q = p;
            for (int k = 0; k < m - 2; ++k) q = q + 0;
            ax(AxiomId::A1, false, q);
            return;
        }
        Path q = p;
        for (int k = 0; k < m - 2 - (i - 1) - 1; ++k) q = q + 0;
        // q = Ch(Ch(L, leaf_i), leaf_{i+1})
        ax(AxiomId::A2, true, q);
        ax(AxiomId::A1, false, q + 1);
        ax(AxiomId::A2, false, q);
    }

    void bubble(const Path& p, int from, int to) {
        int m = int(leaves(p).size());
        for (int i = from; i < to; ++i) swap_adjacent(p, i, m);
        for (int i = from; i > to; --i) swap_adjacent(p, i - 1, m);
    }

    // Sorts the leaves of the left-nested sum at p by `key` (selection sort
    // through adjacent transpositions).
    void sort_leaves(const Path& p, const std::function<std::string(const ExprP&)>& key) {
        int m = int(leaves(p).size());
        for (int i = 0; i < m - 1; ++i) {
            int best = i;
            auto ls = leaves(p);
            std::string bk = key(at(ls[std::size_t(best)]));
            for (int j = i + 1; j < m; ++j) {
                std::string k = key(at(ls[std::size_t(j)]));
                if (k < bk) {
                    best = j;
                    bk = k;
                }
            }
            bubble(p, best, i);
        }
    }

    std::string prop_key(const Prop& p) const {
        std::string s;
        for (std::uint64_t r = 0; r < p.rows(); ++r) s.push_back(p.row(r) ? '1' : '0');
        return s;
    }

    std::string summand_key(const ExprP& leaf) const {
        // Order: accepting summand first (plain), then by action, guard, tail;
        // the signal tail sorts last.
        std::ostringstream os;
        if (leaf->kind == ExprKind::Accept) return "0";
        if (leaf->kind == ExprKind::Signal) return "3";
        if (leaf->kind == ExprKind::Guard) {
            os << "1|" << (leaf->a->act.tau ? "" : leaf->a->act.label) << "|"
               << prop_key(leaf->prop) << "|" << print_expr(leaf->a->a, spec_.vars);
            return os.str();
        }
        os << "1|" << (leaf->act.tau ? "" : leaf->act.label) << "||"
           << print_expr(leaf->a, spec_.vars);
        return os.str();
    }

    // Drops deadlock leaves (keeping at least one leaf), merges duplicate
    // accepting leaves, and sorts. Works for plain sums and for signal sums
    // (where exactly one leaf is the signal tail and ends up last).
    void normalize_sum(const Path& p) {
        if (at(p)->kind != ExprKind::Choice) return;
        left_nest(p);
        for (;;) {
            auto ls = leaves(p);
            int m = int(ls.size());
            if (m < 2) break;
            int d = -1;
            for (int i = 0; i < m; ++i)
                if (at(ls[std::size_t(i)])->kind == ExprKind::Deadlock) d = i;
            if (d >= 0) {
                bubble(p, d, m - 1);
                ax(AxiomId::A6, false, p);
                continue;
            }
            int e1 = -1, e2 = -1;
            for (int i = 0; i < m; ++i)
                if (at(ls[std::size_t(i)])->kind == ExprKind::Accept) {
                    if (e1 < 0)
                        e1 = i;
                    else if (e2 < 0)
                        e2 = i;
                }
            if (e2 >= 0) {
                bubble(p, e1, 0);
                bubble(p, e2, 1);
                Path q = p;
                for (int k = 0; k < m - 2; ++k) q = q + 0;
                ax(AxiomId::A3, false, q);
                continue;
            }
            break;
        }
        if (at(p)->kind == ExprKind::Choice)
            sort_leaves(p, [this](const ExprP& l) { return summand_key(l); });
    }

    // In signal mode the canonical shape is Ch(sum, tail); restore it when
    // normalization collapsed the sum part away.
    void ensure_signal_shape(const Path& p) {
        ExprP t = at(p);
        if (t->kind == ExprKind::Signal) {  // lone tail: add an empty sum
            ax(AxiomId::A6, true, p);
            ax(AxiomId::A1, false, p);
        }
    }

    // --- case derivations ---------------------------------------------------

    Shape derive(Path p) {
        switch (at(p)->kind) {
            case ExprKind::Ident:
                unfold(p);
                return derive(p);
            case ExprKind::Deadlock: return case_deadlock(p);
            case ExprKind::Accept: return case_accept(p);
            case ExprKind::Prefix: return case_prefix(p);
            case ExprKind::Choice: return case_choice(p);
            case ExprKind::Na: return case_na(p);
            case ExprKind::Guard: return case_guard(p);
            case ExprKind::Signal: return case_signal(p);
            case ExprKind::Seq: return case_seq(p);
            case ExprKind::SeqLegacy: return case_seq_legacy(p);
        }
        throw RewriteError("unreachable");
    }

    Shape case_deadlock(const Path& p) {
        if (!sig_) return {0, tru(), fls()};
        ax(AxiomId::A3, true, p);
        ax(AxiomId::C2, true, p + 1, {}, {accept()});
        ax(AxiomId::SI1, true, p + 1);
        return {0, tru(), fls()};
    }

    Shape case_accept(const Path& p) {
        if (!sig_) return {0, tru(), tru()};
        ax(AxiomId::A6, true, p);
        ax(AxiomId::A1, false, p);
        ax(AxiomId::C1, true, p + 1);
        ax(AxiomId::SI1, true, p + 1);
        return {0, tru(), tru()};
    }

    Shape case_prefix(const Path& p) {
        if (!sig_) return {1, tru(), fls()};
        ax(AxiomId::A6, true, p);
        ax(AxiomId::C2, true, p + 1, {}, {accept()});
        ax(AxiomId::SI1, true, p + 1);
        ax(AxiomId::C1, true, p + 0);
        return {1, tru(), fls()};
    }

    Shape case_choice(const Path& p) {
        Shape l = derive(p + 0);
        Shape r = derive(p + 1);
        if (!sig_) {
            normalize_sum(p);
            return {l.n + r.n, tru(), l.chi | r.chi};
        }
        // Ch(Ch(S1,T1), Ch(S2,T2)): gather the two tails and merge them.
        ax(AxiomId::A2, true, p);          // Ch(S1, Ch(T1, Ch(S2,T2)))
        ax(AxiomId::A2, false, p + 1);     // Ch(S1, Ch(Ch(T1,S2), T2))
        ax(AxiomId::A1, false, p + Path{1, 0});
        ax(AxiomId::A2, true, p + 1);      // Ch(S1, Ch(S2, Ch(T1,T2)))
        merge_tails(p + Path{1, 1});
        ax(AxiomId::A2, false, p);         // Ch(Ch(S1,S2), T)
        normalize_sum(p);
        ensure_signal_shape(p);
        return {l.n + r.n, l.psi & r.psi, l.chi | r.chi};
    }

    void merge_tails(const Path& q) {
        // Ch(Sg(psi1, G1), Sg(psi2, G2)) -> Sg(psi1 & psi2, Gd(chi1 | chi2, 1))
        ax(AxiomId::SI4, false, q);
        ax(AxiomId::A1, false, q + 0);
        ax(AxiomId::SI4, false, q + 0);
        ax(AxiomId::A1, false, q + Path{0, 0});
        ax(AxiomId::C3, true, q + Path{0, 0});
        ax(AxiomId::SI5, false, q);
    }

    Shape case_na(const Path& p) {
        Shape s = derive(p + 0);
        if (!sig_) {
            ExprP inner = at(p)->a;
            if (inner->kind == ExprKind::Deadlock) {
                ax(AxiomId::NA1, false, p);
            } else if (inner->kind == ExprKind::Accept) {
                ax(AxiomId::NA2, false, p);
            } else if (inner->kind == ExprKind::Prefix) {
                ax(AxiomId::NA3, false, p);
            } else {
                na_distribute(p);
                normalize_sum(p);
            }
            return {s.n, tru(), fls()};
        }
        ax(AxiomId::NA4, false, p);  // Ch(Na(S), Na(T))
        // tail: Na(Sg(psi, Gd(chi,1))) -> Sg(psi, Gd(false,1))
        ax(AxiomId::SI9, true, p + 1);
        ax(AxiomId::C7, true, p + Path{1, 0});
        ax(AxiomId::NA2, false, p + Path{1, 0, 0});
        ax(AxiomId::C2, true, p + Path{1, 0, 0}, {}, {accept()});
        ax(AxiomId::C4, true, p + Path{1, 0});
        // sum: Na over each guarded summand disappears
        if (at(p + 0)->a->kind == ExprKind::Deadlock) {
            ax(AxiomId::NA1, false, p + 0);
        } else {
            na_distribute_signal(p + 0);
        }
        normalize_sum(p);
        ensure_signal_shape(p);
        return {s.n, s.psi, fls()};
    }

    void na_distribute(const Path& q) {
        if (at(q)->a->kind == ExprKind::Choice) {
            ax(AxiomId::NA4, false, q);
            na_distribute(q + 0);
            na_distribute(q + 1);
            return;
        }
        switch (at(q)->a->kind) {
            case ExprKind::Deadlock: ax(AxiomId::NA1, false, q); break;
            case ExprKind::Accept: ax(AxiomId::NA2, false, q); break;
            case ExprKind::Prefix: ax(AxiomId::NA3, false, q); break;
            default: throw RewriteError("internal error: unexpected NA operand");
        }
    }

    void na_distribute_signal(const Path& q) {
        if (at(q)->a->kind == ExprKind::Choice) {
            ax(AxiomId::NA4, false, q);
            na_distribute_signal(q + 0);
            na_distribute_signal(q + 1);
            return;
        }
        // Na(Gd(phi, Pf)) -> Gd(phi, Pf)
        ax(AxiomId::C7, true, q);
        ax(AxiomId::NA3, false, q + 0);
    }

    Shape case_guard(const Path& p) {
        Prop phi = at(p)->prop;
        Shape s = derive(p + 0);
        ax(AxiomId::C5, false, p);  // Ch(Gd(phi,S), Gd(phi,T))
        // tail
        ax(AxiomId::SI6, false, p + 1);
        ax(AxiomId::C4, true, p + Path{1, 0});
        // sum
        if (at(p + 0)->a->kind == ExprKind::Deadlock) {
            ax(AxiomId::C2, true, p + Path{0, 0}, {}, {accept()});
            ax(AxiomId::C4, true, p + 0);
            ax(AxiomId::C2, false, p + 0);
        } else {
            guard_distribute(p + 0);
        }
        normalize_sum(p);
        ensure_signal_shape(p);
        return {s.n, !phi | s.psi, phi & s.chi};
    }

    void guard_distribute(const Path& q) {
        if (at(q)->a->kind == ExprKind::Choice) {
            ax(AxiomId::C5, false, q);
            guard_distribute(q + 0);
            guard_distribute(q + 1);
            return;
        }
        ax(AxiomId::C4, true, q);  // Gd(phi, Gd(phi_i, Pf)) -> Gd(phi & phi_i, Pf)
    }

    Shape case_signal(const Path& p) {
        Prop phi = at(p)->prop;
        Shape s = derive(p + 0);
        ax(AxiomId::A1, false, p + 0);  // Sg(phi, Ch(T, S))
        ax(AxiomId::SI4, false, p + 0);
        ax(AxiomId::SI5, false, p);     // Sg(phi & psi, Ch(G, S))
        ax(AxiomId::SI4, true, p);      // Ch(Sg(phi&psi, G), S)
        ax(AxiomId::A1, false, p);
        normalize_sum(p);
        ensure_signal_shape(p);
        return {s.n, phi & s.psi, s.chi};
    }

    // --- sequencing ---------------------------------------------------------

    std::vector<RewriteStep> slice(std::size_t from) const {
        return {trace_.begin() + long(from), trace_.end()};
    }

    // Reverse-replays `steps` (recorded under path prefix `from`) inside the
    // subtree at `to`.
    void undo_inside(const std::vector<RewriteStep>& steps, const Path& from, const Path& to) {
        for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
            RewriteStep s = *it;
            s.reversed = !s.reversed;
            Path rel(s.path.begin() + long(from.size()), s.path.end());
            s.path = to + rel;
            emit(std::move(s));
        }
    }

    Shape case_seq(const Path& p) {
        if (!sig_) return case_seq_plain(p);
        Shape l = derive(p + 0);
        Prop can_stop = l.psi & l.chi;
        ExprP original_right = at(p)->b;
        RewriteStep sh;
        sh.kind = RewriteStep::Kind::SeqHead;
        sh.terms = {at(p)};
        sh.path = p;
        if (can_stop.is_false()) {
            emit(std::move(sh));
            normalize_sum(p);
            ensure_signal_shape(p);
            return {l.n, l.psi, fls()};
        }
        std::size_t t0 = trace_.size();
        Shape r = derive(p + 1);
        std::vector<RewriteStep> sub = slice(t0);
        sh.terms = {at(p)};
        emit(std::move(sh));
        // Tails of the first l.n summands still hold the right-hand head
        // normal form; rewrite them back to the original expression.
        if (!sub.empty()) {
            auto ls = leaves(p + 0);
            for (int i = 0; i < l.n; ++i)
                undo_inside(sub, p + 1, ls[std::size_t(i)] + Path{0, 0, 1});
        }
        normalize_sum(p);
        ensure_signal_shape(p);
        Prop psi = l.psi & (!l.chi | r.psi);
        Prop chi = l.chi & r.psi & r.chi;
        int n = int(parse_hnf_term(spec_, at(p))->summands.size());
        return {n, psi, chi};
    }

    // Plain seqc: the three cases of the head-normal-form argument.
    Shape case_seq_plain(const Path& p) {
        Shape l = derive(p + 0);
        ExprP left = at(p)->a;
        if (l.n == 0 && l.chi.is_false()) {
            ax(AxiomId::A7, false, p, {}, {at(p)->b});
            return {0, tru(), fls()};
        }
        if (l.n == 0) {
            ax(AxiomId::A9, false, p);
            return derive(p);
        }
        if (l.chi.is_false()) {
            // No accepting summand on the left: distribute and keep the
            // right argument untouched.
            distribute_left(p, l.n);
            normalize_sum(p);
            return {l.n, tru(), fls()};
        }
        // Left has the accepting summand.
        std::size_t t0 = trace_.size();
        Shape r = derive(p + 1);
        std::vector<RewriteStep> sub = slice(t0);
        if (r.chi.is_false()) {
            // right argument = NA(right argument)
            std::size_t t1 = trace_.size();
            if (at(p)->b->kind == ExprKind::Deadlock) {
                ax(AxiomId::NA1, true, p + 1);
            } else if (at(p)->b->kind == ExprKind::Prefix) {
                ax(AxiomId::NA3, true, p + 1);
            } else {
                naify_sum(p + 1);
            }
            std::vector<RewriteStep> wrap = slice(t1);
            reshape_left(p + 0, l.n);
            ax(AxiomId::A12, false, p);
            restore_left(p + 0, l.n);
            distribute_left(p, l.n);
            std::vector<RewriteStep> both = sub;
            both.insert(both.end(), wrap.begin(), wrap.end());
            undo_in_tails(p, l.n, both);
            normalize_sum(p);
            return {l.n, tru(), fls()};
        }
        // Both sides accept: A13 peels the accepting summand off.
        std::size_t t1 = trace_.size();
        if (r.n == 0) {  // right = 1: pad to (0 + 1)
            ax(AxiomId::A6, true, p + 1);
            ax(AxiomId::A1, false, p + 1);
        } else {
            // right = Ch(E, s...) canonical: move the accepting leaf last
            int m = int(leaves(p + 1).size());
            bubble(p + 1, 0, m - 1);
        }
        std::vector<RewriteStep> wrap = slice(t1);
        reshape_left(p + 0, l.n);
        ax(AxiomId::A13, false, p);
        restore_left(p + Path{0, 0}, l.n);
        distribute_left(p + 0, l.n);
        std::vector<RewriteStep> both = sub;
        both.insert(both.end(), wrap.begin(), wrap.end());
        undo_in_tails(p + 0, l.n, both, /*right_from=*/p + 1);
        normalize_sum(p);
        return {l.n + r.n, tru(), l.chi & r.chi};
    }

    // Turns the canonical sum at q into Na-wrapped form Na(sum).
    void naify_sum(const Path& q) {
        if (at(q)->kind == ExprKind::Prefix) {
            ax(AxiomId::NA3, true, q);
            return;
        }
        auto ls = leaves(q);
        for (const auto& lp : ls) {
            if (at(lp)->kind == ExprKind::Prefix) ax(AxiomId::NA3, true, lp);
            else if (at(lp)->kind == ExprKind::Deadlock) ax(AxiomId::NA1, true, lp);
        }
        fold_na(q);
    }

    void fold_na(const Path& q) {
        if (at(q)->kind != ExprKind::Choice) return;
        fold_na(q + 0);
        fold_na(q + 1);
        ax(AxiomId::NA4, true, q);
    }

    // Reorders the canonical accepting-first sum (1 + s1 + ... + sn) at q
    // into the pattern (a.x + y + 1) expected by A12/A13.
    void reshape_left(const Path& q, int n) {
        int m = int(leaves(q).size());  // n + 1 leaves, accepting first
        bubble(q, 0, m - 1);            // accepting leaf last
        if (n == 1) {
            ax(AxiomId::A6, true, q + 0);  // pad: s1 -> s1 + 0
        } else {
            right_nest(q + 0);
        }
    }

    // Undoes the padding/right-nesting inside the left factor after A12/A13
    // consumed the accepting summand.
    void restore_left(const Path& q, int n) {
        if (n == 1) {
            // Ch(Pf, 0): drop the pad.
            ax(AxiomId::A6, false, q);
        } else {
            left_nest(q);
        }
    }

    // Distributes sequencing over the (1-free) left sum at p and lifts each
    // summand's prefix out.
    void distribute_left(const Path& p, int n) {
        if (n == 1) {
            ax(AxiomId::A10, false, p);
            return;
        }
        naify_sum(p + 0);
        a11_distribute(p);
    }

    void a11_distribute(const Path& q) {
        if (at(q)->a->a->kind == ExprKind::Choice) {
            ax(AxiomId::A11, false, q);
            a11_distribute(q + 0);
            a11_distribute(q + 1);
            return;
        }
        ax(AxiomId::NA3, false, q + 0);
        ax(AxiomId::A10, false, q);
    }

    // After distribution, every summand tail at p holds the transformed
    // right argument; reverse the recorded steps inside each tail.
    void undo_in_tails(const Path& p, int n, const std::vector<RewriteStep>& steps,
                       std::optional<Path> right_from = std::nullopt) {
        if (steps.empty()) return;
        Path from = right_from ? *right_from : p + 1;
        std::vector<Path> tails;
        if (at(p)->kind == ExprKind::Choice) {
            for (const auto& lp : leaves(p))
                if (at(lp)->kind == ExprKind::Prefix) tails.push_back(lp + Path{0, 1});
        } else {
            tails.push_back(p + Path{0, 1});
        }
        if (int(tails.size()) != n) throw RewriteError("internal error: tail count mismatch");
        for (const auto& t : tails) undo_inside(steps, from, t);
    }

    Shape case_seq_legacy(const Path& p) {
        Shape l = derive(p + 0);
        if (l.n == 0 && l.chi.is_false()) {
            ax(AxiomId::A7, false, p, {}, {at(p)->b});
            return {0, tru(), fls()};
        }
        if (l.n == 0) {
            ax(AxiomId::A9, false, p);
            return derive(p);
        }
        std::vector<Path> accept_sites;
        a4_distribute(p, accept_sites);
        Shape r{0, tru(), fls()};
        if (!accept_sites.empty()) r = derive(accept_sites.front());
        normalize_sum(p);
        return {l.n + r.n, tru(), l.chi.is_true() ? r.chi : fls()};
    }

    void a4_distribute(const Path& q, std::vector<Path>& accept_sites) {
        if (at(q)->a->kind == ExprKind::Choice) {
            ax(AxiomId::A4, false, q);
            a4_distribute(q + 0, accept_sites);
            a4_distribute(q + 1, accept_sites);
            return;
        }
        if (at(q)->a->kind == ExprKind::Accept) {
            ax(AxiomId::A9, false, q);
            accept_sites.push_back(q);  // now holds the original right argument
            return;
        }
        ax(AxiomId::A10, false, q);
    }
};

}  // namespace

Hnf hnf(Semantics& sem, const ExprP& expr) {
    HnfEngine engine(sem);
    return engine.run(expr);
}

std::string Hnf::format(const std::vector<std::string>& vars) const {
    std::ostringstream os;
    os << "summands:";
    if (summands.empty()) os << " (none)";
    os << "\n";
    for (const auto& s : summands)
        os << "  [" << s.guard.format(vars) << "] " << s.act.name() << " . "
           << print_expr(s.tail, vars) << "\n";
    os << "root signal: " << psi.format(vars) << "\n";
    os << "acceptance:  " << chi.format(vars) << "\n";
    return os.str();
}

}  // namespace pdaproc
