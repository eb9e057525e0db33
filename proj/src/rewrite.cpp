#include "pdaproc/rewrite.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace pdaproc {

// ---------------------------------------------------------------------------
// Axiom table

const std::vector<AxiomInfo>& axiom_table() {
    static const std::vector<AxiomInfo> table = {
        {AxiomId::A1, "A1", "x + y", "y + x", "", false, false, false},
        {AxiomId::A2, "A2", "x + (y + z)", "(x + y) + z", "", false, false, false},
        {AxiomId::A3, "A3", "x + x", "x", "", false, false, false},
        {AxiomId::A4, "A4", "(x + y) . z", "x . z + y . z", "", true, false, false},
        {AxiomId::A5, "A5", "(x ; y) ; z", "x ; (y ; z)", "", false, false, false},
        {AxiomId::A6, "A6", "x + 0", "x", "", false, false, false},
        {AxiomId::A7, "A7", "0 ; x", "0", "", false, false, false},
        {AxiomId::A8, "A8", "x ; 1", "x", "", false, false, false},
        {AxiomId::A9, "A9", "1 ; x", "x", "", false, false, false},
        {AxiomId::A10, "A10", "(a.x) ; y", "a.(x ; y)", "", false, false, false},
        {AxiomId::A11, "A11", "NA(x + y) ; z", "NA(x) ; z + NA(y) ; z", "", false, true, false},
        {AxiomId::A12, "A12", "(a.x + y + 1) ; NA(z)", "(a.x + y) ; NA(z)", "", false, true, false},
        {AxiomId::A13, "A13", "(a.x + y + 1) ; (z + 1)", "(a.x + y) ; (z + 1) + 1", "", false,
         true, false},
        {AxiomId::NA1, "NA1", "NA(0)", "0", "", false, false, false},
        {AxiomId::NA2, "NA2", "NA(1)", "0", "", false, false, false},
        {AxiomId::NA3, "NA3", "NA(a.x)", "a.x", "", false, false, false},
        {AxiomId::NA4, "NA4", "NA(x + y)", "NA(x) + NA(y)", "", false, false, false},
        {AxiomId::C1, "C1", "[true] -> x", "x", "", false, true, true},
        {AxiomId::C2, "C2", "[false] -> x", "0", "", false, true, true},
        {AxiomId::C3, "C3", "[phi | psi] -> x", "([phi] -> x) + ([psi] -> x)", "", false, true,
         true},
        {AxiomId::C4, "C4", "[phi & psi] -> x", "[phi] -> ([psi] -> x)", "", false, true, true},
        {AxiomId::C5, "C5", "[phi] -> (x + y)", "([phi] -> x) + ([phi] -> y)", "", false, true,
         true},
        {AxiomId::C6, "C6", "[phi] -> (x ; y)", "([phi] -> x) ; y", "", false, true, true},
        {AxiomId::C7, "C7", "[phi] -> NA(x)", "NA([phi] -> x)", "", false, true, true},
        {AxiomId::C8, "C8", "(NA(x) + [phi] -> 1) ; (NA(y) + [psi] -> 1)",
         "NA(x) ; (NA(y) + [psi] -> 1) + [phi & psi] -> 1", "left argument must be able to step",
         false, true, true},
        {AxiomId::SI1, "SI1", "[true]^^ x", "x", "", false, true, true},
        {AxiomId::SI2, "SI2", "[false]^^ x", "[false]^^ 0", "", false, true, true},
        {AxiomId::SI3, "SI3", "a.([false]^^ x)", "0", "", false, true, true},
        {AxiomId::SI4, "SI4", "([phi]^^ x) + y", "[phi]^^ (x + y)", "", false, true, true},
        {AxiomId::SI5, "SI5", "[phi]^^ ([psi]^^ x)", "[phi & psi]^^ x", "", false, true, true},
        {AxiomId::SI6, "SI6", "[phi] -> ([psi]^^ x)", "[!phi | psi]^^ ([phi] -> x)", "", false,
         true, true},
        {AxiomId::SI7, "SI7", "[phi]^^ ([phi] -> x)", "[phi]^^ x", "", false, true, true},
        {AxiomId::SI8, "SI8", "[phi]^^ (x ; y)", "([phi]^^ x) ; y", "", false, true, true},
        {AxiomId::SI9, "SI9", "[phi]^^ NA(x)", "NA([phi]^^ x)", "", false, true, true},
        {AxiomId::R, "R", "a.([sigma]^^ x)", "0",
         "sigma evaluates to false when every variable is true (reset effect)", false, true,
         true},
    };
    return table;
}

const AxiomInfo& axiom_info(AxiomId id) {
    for (const auto& a : axiom_table())
        if (a.id == id) return a;
    throw Error("unknown axiom");
}

std::string RewriteStep::describe(const std::vector<std::string>& vars) const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Axiom: os << axiom_info(axiom).name << (reversed ? " (right-to-left)" : ""); break;
        case Kind::Unfold: os << (reversed ? "fold " : "unfold ") << ident; break;
        case Kind::SeqHead: os << "seq-head-expansion" << (reversed ? " (undo)" : ""); break;
    }
    os << " at [";
    for (std::size_t i = 0; i < path.size(); ++i) os << (i ? "," : "") << path[i];
    os << "]";
    for (const auto& p : props) os << " {" << p.format(vars) << "}";
    return os.str();
}

// ---------------------------------------------------------------------------
// Path navigation

namespace {

const ExprP& child(const ExprP& e, int i) {
    if (i == 0 && e->a) return e->a;
    if (i == 1 && e->b) return e->b;
    throw RewriteError("step path leaves the term");
}

ExprP get_at(const ExprP& root, const std::vector<int>& path) {
    ExprP cur = root;
    for (int i : path) cur = child(cur, i);
    return cur;
}

ExprP rebuild(const ExprP& e, int i, const ExprP& sub) {
    Expr copy = *e;
    (void)child(e, i);
    if (i == 0)
        copy.a = sub;
    else
        copy.b = sub;
    // Re-make through the factory path to refresh the hash.
    switch (copy.kind) {
        case ExprKind::Prefix: return prefix(copy.act, copy.a);
        case ExprKind::Choice: return choice(copy.a, copy.b);
        case ExprKind::Seq: return seq(copy.a, copy.b);
        case ExprKind::SeqLegacy: return seq_legacy(copy.a, copy.b);
        case ExprKind::Na: return na(copy.a);
        case ExprKind::Guard: return guard(copy.prop, copy.a);
        case ExprKind::Signal: return signal(copy.prop, copy.a);
        default: throw RewriteError("step path leaves the term");
    }
}

ExprP set_at(const ExprP& root, const std::vector<int>& path, std::size_t i, const ExprP& sub) {
    if (i == path.size()) return sub;
    return rebuild(root, path[i], set_at(child(root, path[i]), path, i + 1, sub));
}

bool is_seqop(const ExprP& e) {
    return e->kind == ExprKind::Seq || e->kind == ExprKind::SeqLegacy;
}

ExprP mk_seqop(ExprKind k, ExprP a, ExprP b) {
    return k == ExprKind::Seq ? seq(std::move(a), std::move(b))
                              : seq_legacy(std::move(a), std::move(b));
}

[[noreturn]] void mismatch(const char* what) {
    throw RewriteError(std::string("redex does not match ") + what);
}

struct HnfView {
    std::vector<HnfSummand> summands;
    Prop psi, chi;
};

std::optional<HnfView> view_signal_hnf(const ExprP& t) {
    if (t->kind != ExprKind::Choice) return std::nullopt;
    const ExprP& tail = t->b;
    if (tail->kind != ExprKind::Signal) return std::nullopt;
    const ExprP& g = tail->a;
    if (g->kind != ExprKind::Guard || g->a->kind != ExprKind::Accept) return std::nullopt;
    HnfView v;
    v.psi = tail->prop;
    v.chi = g->prop;
    std::vector<ExprP> leaves = flatten_choice(t->a);
    if (leaves.size() == 1 && leaves[0]->kind == ExprKind::Deadlock) return v;
    for (const auto& s : leaves) {
        if (s->kind != ExprKind::Guard || s->a->kind != ExprKind::Prefix) return std::nullopt;
        v.summands.push_back({s->prop, s->a->act, s->a->a});
    }
    return v;
}

}  // namespace

ExprP hnf_term(const Spec& spec, const std::vector<HnfSummand>& summands, const Prop& psi,
               const Prop& chi) {
    if (spec.vars.empty()) {
        std::vector<ExprP> leaves;
        if (chi.is_true()) leaves.push_back(accept());
        for (const auto& s : summands) leaves.push_back(prefix(s.act, s.tail));
        if (leaves.empty()) return deadlock();
        return big_choice(leaves);
    }
    std::vector<ExprP> leaves;
    for (const auto& s : summands) leaves.push_back(guard(s.guard, prefix(s.act, s.tail)));
    ExprP sum = leaves.empty() ? deadlock() : big_choice(leaves);
    return choice(sum, signal(psi, guard(chi, accept())));
}

std::optional<Hnf> parse_hnf_term(const Spec& spec, const ExprP& term) {
    Hnf h;
    h.input = term;
    h.term = term;
    int n = spec.nvars();
    if (spec.vars.empty()) {
        Prop tru = Prop::constant(n, true);
        h.psi = tru;
        h.chi = Prop::constant(n, false);
        std::vector<ExprP> leaves = flatten_choice(term);
        if (leaves.size() == 1 && leaves[0]->kind == ExprKind::Deadlock) return h;
        for (std::size_t i = 0; i < leaves.size(); ++i) {
            if (leaves[i]->kind == ExprKind::Accept && i == 0) {
                h.chi = tru;
            } else if (leaves[i]->kind == ExprKind::Prefix) {
                h.summands.push_back({tru, leaves[i]->act, leaves[i]->a});
            } else {
                return std::nullopt;
            }
        }
        return h;
    }
    auto v = view_signal_hnf(term);
    if (!v) return std::nullopt;
    h.summands = v->summands;
    h.psi = v->psi;
    h.chi = v->chi;
    return h;
}

// ---------------------------------------------------------------------------
// Step application

namespace {

ExprP apply_axiom(Semantics& sem, AxiomId id, bool rev, const RewriteStep& st, const ExprP& t) {
    const Spec& spec = sem.spec();
    int nv = spec.nvars();
    Prop tru = Prop::constant(nv, true);
    Prop fls = Prop::constant(nv, false);
    auto need_props = [&](std::size_t n) {
        if (st.props.size() < n) throw RewriteError("step is missing proposition parameters");
    };
    auto need_terms = [&](std::size_t n) {
        if (st.terms.size() < n) throw RewriteError("step is missing term parameters");
    };
    switch (id) {
        case AxiomId::A1:
            if (t->kind != ExprKind::Choice) mismatch("A1");
            return choice(t->b, t->a);
        case AxiomId::A2:
            if (!rev) {
                if (t->kind != ExprKind::Choice || t->b->kind != ExprKind::Choice) mismatch("A2");
                return choice(choice(t->a, t->b->a), t->b->b);
            }
            if (t->kind != ExprKind::Choice || t->a->kind != ExprKind::Choice) mismatch("A2");
            return choice(t->a->a, choice(t->a->b, t->b));
        case AxiomId::A3:
            if (!rev) {
                if (t->kind != ExprKind::Choice || !expr_equal(t->a, t->b)) mismatch("A3");
                return t->a;
            }
            return choice(t, t);
        case AxiomId::A4:
            if (!rev) {
                if (!is_seqop(t) || t->a->kind != ExprKind::Choice) mismatch("A4");
                return choice(mk_seqop(t->kind, t->a->a, t->b), mk_seqop(t->kind, t->a->b, t->b));
            }
            if (t->kind != ExprKind::Choice || !is_seqop(t->a) || t->a->kind != t->b->kind ||
                !expr_equal(t->a->b, t->b->b))
                mismatch("A4");
            return mk_seqop(t->a->kind, choice(t->a->a, t->b->a), t->a->b);
        case AxiomId::A5:
            if (!rev) {
                if (!is_seqop(t) || t->a->kind != t->kind) mismatch("A5");
                return mk_seqop(t->kind, t->a->a, mk_seqop(t->kind, t->a->b, t->b));
            }
            if (!is_seqop(t) || t->b->kind != t->kind) mismatch("A5");
            return mk_seqop(t->kind, mk_seqop(t->kind, t->a, t->b->a), t->b->b);
        case AxiomId::A6:
            if (!rev) {
                if (t->kind != ExprKind::Choice || t->b->kind != ExprKind::Deadlock) mismatch("A6");
                return t->a;
            }
            return choice(t, deadlock());
        case AxiomId::A7:
            if (!rev) {
                if (!is_seqop(t) || t->a->kind != ExprKind::Deadlock) mismatch("A7");
                return deadlock();
            }
            need_terms(1);
            if (t->kind != ExprKind::Deadlock) mismatch("A7");
            return st.terms[0];
        case AxiomId::A8:
            if (!rev) {
                if (!is_seqop(t) || t->b->kind != ExprKind::Accept) mismatch("A8");
                return t->a;
            }
            return mk_seqop(spec.mode == Mode::Seqc ? ExprKind::Seq : ExprKind::SeqLegacy, t,
                            accept());
        case AxiomId::A9:
            if (!rev) {
                if (!is_seqop(t) || t->a->kind != ExprKind::Accept) mismatch("A9");
                return t->b;
            }
            return mk_seqop(spec.mode == Mode::Seqc ? ExprKind::Seq : ExprKind::SeqLegacy,
                            accept(), t);
        case AxiomId::A10:
            if (!rev) {
                if (!is_seqop(t) || t->a->kind != ExprKind::Prefix) mismatch("A10");
                return prefix(t->a->act, mk_seqop(t->kind, t->a->a, t->b));
            }
            if (t->kind != ExprKind::Prefix || !is_seqop(t->a)) mismatch("A10");
            return mk_seqop(t->a->kind, prefix(t->act, t->a->a), t->a->b);
        case AxiomId::A11:
            if (!rev) {
                if (!is_seqop(t) || t->a->kind != ExprKind::Na ||
                    t->a->a->kind != ExprKind::Choice)
                    mismatch("A11");
                return choice(mk_seqop(t->kind, na(t->a->a->a), t->b),
                              mk_seqop(t->kind, na(t->a->a->b), t->b));
            }
            if (t->kind != ExprKind::Choice || !is_seqop(t->a) || !is_seqop(t->b) ||
                t->a->a->kind != ExprKind::Na || t->b->a->kind != ExprKind::Na ||
                !expr_equal(t->a->b, t->b->b))
                mismatch("A11");
            return mk_seqop(t->a->kind, na(choice(t->a->a->a, t->b->a->a)), t->a->b);
        case AxiomId::A12: {
            auto shaped = [&](const ExprP& l) {
                return l->kind == ExprKind::Choice && l->a->kind == ExprKind::Choice &&
                       l->a->a->kind == ExprKind::Prefix && l->b->kind == ExprKind::Accept;
            };
            if (!rev) {
                if (!is_seqop(t) || !shaped(t->a) || t->b->kind != ExprKind::Na) mismatch("A12");
                return mk_seqop(t->kind, t->a->a, t->b);
            }
            if (!is_seqop(t) || t->a->kind != ExprKind::Choice ||
                t->a->a->kind != ExprKind::Prefix || t->b->kind != ExprKind::Na)
                mismatch("A12");
            return mk_seqop(t->kind, choice(t->a, accept()), t->b);
        }
        case AxiomId::A13: {
            auto one_shaped = [&](const ExprP& l) {
                return l->kind == ExprKind::Choice && l->b->kind == ExprKind::Accept;
            };
            if (!rev) {
                if (!is_seqop(t) || !one_shaped(t->a) || t->a->a->kind != ExprKind::Choice ||
                    t->a->a->a->kind != ExprKind::Prefix || !one_shaped(t->b))
                    mismatch("A13");
                return choice(mk_seqop(t->kind, t->a->a, t->b), accept());
            }
            if (t->kind != ExprKind::Choice || t->b->kind != ExprKind::Accept || !is_seqop(t->a) ||
                t->a->a->kind != ExprKind::Choice || t->a->a->a->kind != ExprKind::Prefix ||
                !one_shaped(t->a->b))
                mismatch("A13");
            return mk_seqop(t->a->kind, choice(t->a->a, accept()), t->a->b);
        }
        case AxiomId::NA1:
            if (!rev) {
                if (t->kind != ExprKind::Na || t->a->kind != ExprKind::Deadlock) mismatch("NA1");
                return deadlock();
            }
            if (t->kind != ExprKind::Deadlock) mismatch("NA1");
            return na(deadlock());
        case AxiomId::NA2:
            if (!rev) {
                if (t->kind != ExprKind::Na || t->a->kind != ExprKind::Accept) mismatch("NA2");
                return deadlock();
            }
            if (t->kind != ExprKind::Deadlock) mismatch("NA2");
            return na(accept());
        case AxiomId::NA3:
            if (!rev) {
                if (t->kind != ExprKind::Na || t->a->kind != ExprKind::Prefix) mismatch("NA3");
                return t->a;
            }
            if (t->kind != ExprKind::Prefix) mismatch("NA3");
            return na(t);
        case AxiomId::NA4:
            if (!rev) {
                if (t->kind != ExprKind::Na || t->a->kind != ExprKind::Choice) mismatch("NA4");
                return choice(na(t->a->a), na(t->a->b));
            }
            if (t->kind != ExprKind::Choice || t->a->kind != ExprKind::Na ||
                t->b->kind != ExprKind::Na)
                mismatch("NA4");
            return na(choice(t->a->a, t->b->a));
        case AxiomId::C1:
            if (!rev) {
                if (t->kind != ExprKind::Guard || !t->prop.is_true()) mismatch("C1");
                return t->a;
            }
            return guard(tru, t);
        case AxiomId::C2:
            if (!rev) {
                if (t->kind != ExprKind::Guard || !t->prop.is_false()) mismatch("C2");
                return deadlock();
            }
            need_terms(1);
            if (t->kind != ExprKind::Deadlock) mismatch("C2");
            return guard(fls, st.terms[0]);
        case AxiomId::C3:
            if (!rev) {
                need_props(2);
                if (t->kind != ExprKind::Guard || t->prop != (st.props[0] | st.props[1]))
                    mismatch("C3");
                return choice(guard(st.props[0], t->a), guard(st.props[1], t->a));
            }
            if (t->kind != ExprKind::Choice || t->a->kind != ExprKind::Guard ||
                t->b->kind != ExprKind::Guard || !expr_equal(t->a->a, t->b->a))
                mismatch("C3");
            return guard(t->a->prop | t->b->prop, t->a->a);
        case AxiomId::C4:
            if (!rev) {
                need_props(2);
                if (t->kind != ExprKind::Guard || t->prop != (st.props[0] & st.props[1]))
                    mismatch("C4");
                return guard(st.props[0], guard(st.props[1], t->a));
            }
            if (t->kind != ExprKind::Guard || t->a->kind != ExprKind::Guard) mismatch("C4");
            return guard(t->prop & t->a->prop, t->a->a);
        case AxiomId::C5:
            if (!rev) {
                if (t->kind != ExprKind::Guard || t->a->kind != ExprKind::Choice) mismatch("C5");
                return choice(guard(t->prop, t->a->a), guard(t->prop, t->a->b));
            }
            if (t->kind != ExprKind::Choice || t->a->kind != ExprKind::Guard ||
                t->b->kind != ExprKind::Guard || t->a->prop != t->b->prop)
                mismatch("C5");
            return guard(t->a->prop, choice(t->a->a, t->b->a));
        case AxiomId::C6:
            if (!rev) {
                if (t->kind != ExprKind::Guard || !is_seqop(t->a)) mismatch("C6");
                return mk_seqop(t->a->kind, guard(t->prop, t->a->a), t->a->b);
            }
            if (!is_seqop(t) || t->a->kind != ExprKind::Guard) mismatch("C6");
            return guard(t->a->prop, mk_seqop(t->kind, t->a->a, t->b));
        case AxiomId::C7:
            if (!rev) {
                if (t->kind != ExprKind::Guard || t->a->kind != ExprKind::Na) mismatch("C7");
                return na(guard(t->prop, t->a->a));
            }
            if (t->kind != ExprKind::Na || t->a->kind != ExprKind::Guard) mismatch("C7");
            return guard(t->a->prop, na(t->a->a));
        case AxiomId::C8: {
            auto factor = [&](const ExprP& f) {
                return f->kind == ExprKind::Choice && f->a->kind == ExprKind::Na &&
                       f->b->kind == ExprKind::Guard && f->b->a->kind == ExprKind::Accept;
            };
            if (!rev) {
                if (!is_seqop(t) || !factor(t->a) || !factor(t->b)) mismatch("C8");
                return choice(mk_seqop(t->kind, t->a->a, t->b),
                              guard(t->a->b->prop & t->b->b->prop, accept()));
            }
            need_props(2);
            if (t->kind != ExprKind::Choice || !is_seqop(t->a) ||
                t->a->a->kind != ExprKind::Na || !factor(t->a->b) ||
                t->b->kind != ExprKind::Guard || t->b->a->kind != ExprKind::Accept ||
                t->b->prop != (st.props[0] & st.props[1]) ||
                t->a->b->b->prop != st.props[1])
                mismatch("C8");
            return mk_seqop(t->a->kind, choice(t->a->a, guard(st.props[0], accept())), t->a->b);
        }
        case AxiomId::SI1:
            if (!rev) {
                if (t->kind != ExprKind::Signal || !t->prop.is_true()) mismatch("SI1");
                return t->a;
            }
            return signal(tru, t);
        case AxiomId::SI2:
            if (!rev) {
                if (t->kind != ExprKind::Signal || !t->prop.is_false()) mismatch("SI2");
                return signal(fls, deadlock());
            }
            need_terms(1);
            if (t->kind != ExprKind::Signal || !t->prop.is_false() ||
                t->a->kind != ExprKind::Deadlock)
                mismatch("SI2");
            return signal(fls, st.terms[0]);
        case AxiomId::SI3:
            if (!rev) {
                if (t->kind != ExprKind::Prefix || t->a->kind != ExprKind::Signal ||
                    !t->a->prop.is_false())
                    mismatch("SI3");
                return deadlock();
            }
            need_terms(1);
            if (t->kind != ExprKind::Deadlock) mismatch("SI3");
            return st.terms[0];
        case AxiomId::SI4:
            if (!rev) {
                if (t->kind != ExprKind::Choice || t->a->kind != ExprKind::Signal) mismatch("SI4");
                return signal(t->a->prop, choice(t->a->a, t->b));
            }
            if (t->kind != ExprKind::Signal || t->a->kind != ExprKind::Choice) mismatch("SI4");
            return choice(signal(t->prop, t->a->a), t->a->b);
        case AxiomId::SI5:
            if (!rev) {
                if (t->kind != ExprKind::Signal || t->a->kind != ExprKind::Signal) mismatch("SI5");
                return signal(t->prop & t->a->prop, t->a->a);
            }
            need_props(2);
            if (t->kind != ExprKind::Signal || t->prop != (st.props[0] & st.props[1]))
                mismatch("SI5");
            return signal(st.props[0], signal(st.props[1], t->a));
        case AxiomId::SI6:
            if (!rev) {
                if (t->kind != ExprKind::Guard || t->a->kind != ExprKind::Signal) mismatch("SI6");
                return signal(!t->prop | t->a->prop, guard(t->prop, t->a->a));
            }
            need_props(1);
            if (t->kind != ExprKind::Signal || t->a->kind != ExprKind::Guard ||
                t->prop != (!t->a->prop | st.props[0]))
                mismatch("SI6");
            return guard(t->a->prop, signal(st.props[0], t->a->a));
        case AxiomId::SI7:
            if (!rev) {
                if (t->kind != ExprKind::Signal || t->a->kind != ExprKind::Guard ||
                    t->prop != t->a->prop)
                    mismatch("SI7");
                return signal(t->prop, t->a->a);
            }
            if (t->kind != ExprKind::Signal) mismatch("SI7");
            return signal(t->prop, guard(t->prop, t->a));
        case AxiomId::SI8:
            if (!rev) {
                if (t->kind != ExprKind::Signal || !is_seqop(t->a)) mismatch("SI8");
                return mk_seqop(t->a->kind, signal(t->prop, t->a->a), t->a->b);
            }
            if (!is_seqop(t) || t->a->kind != ExprKind::Signal) mismatch("SI8");
            return signal(t->a->prop, mk_seqop(t->kind, t->a->a, t->b));
        case AxiomId::SI9:
            if (!rev) {
                if (t->kind != ExprKind::Signal || t->a->kind != ExprKind::Na) mismatch("SI9");
                return na(signal(t->prop, t->a->a));
            }
            if (t->kind != ExprKind::Na || t->a->kind != ExprKind::Signal) mismatch("SI9");
            return signal(t->a->prop, na(t->a->a));
        case AxiomId::R: {
            Valuation vt = Valuation::all_true(nv);
            if (!rev) {
                if (t->kind != ExprKind::Prefix || t->a->kind != ExprKind::Signal ||
                    t->a->prop.eval(vt))
                    mismatch("R");
                return deadlock();
            }
            need_terms(1);
            if (t->kind != ExprKind::Deadlock) mismatch("R");
            return st.terms[0];
        }
    }
    throw RewriteError("unknown axiom");
}

ExprP seq_head_target(Semantics& sem, const ExprP& t) {
    const Spec& spec = sem.spec();
    if (t->kind != ExprKind::Seq) mismatch("seq-head-expansion");
    auto left = parse_hnf_term(spec, t->a);
    if (!left || spec.vars.empty()) mismatch("seq-head-expansion (left argument)");
    Valuation vt = Valuation::all_true(spec.nvars());
    Prop can_stop = left->psi & left->chi;
    std::vector<HnfSummand> out;
    for (const auto& s : left->summands)
        out.push_back({s.guard, s.act, seq(s.tail, t->b)});
    if (can_stop.is_false()) {
        // The left argument never accepts: control cannot pass.
        return hnf_term(spec, out, left->psi, Prop::constant(spec.nvars(), false));
    }
    auto right = parse_hnf_term(spec, t->b);
    if (!right) mismatch("seq-head-expansion (right argument)");
    // Valuations where the left argument accepts and none of its live
    // summands can fire: the step rules pass control to the right argument.
    Prop gamma = can_stop;
    for (const auto& s : left->summands)
        if (sem.cons(s.tail, vt)) gamma = gamma & !s.guard;
    for (const auto& s : right->summands) {
        Prop g = gamma & s.guard;
        if (g.satisfiable()) out.push_back({g, s.act, s.tail});
    }
    Prop psi = left->psi & (!left->chi | right->psi);
    Prop chi = left->chi & right->psi & right->chi;
    return hnf_term(spec, out, psi, chi);
}

}  // namespace

ExprP apply_step(Semantics& sem, const ExprP& term, const RewriteStep& step) {
    ExprP t = get_at(term, step.path);
    ExprP replaced;
    switch (step.kind) {
        case RewriteStep::Kind::Axiom:
            replaced = apply_axiom(sem, step.axiom, step.reversed, step, t);
            break;
        case RewriteStep::Kind::Unfold: {
            if (!step.reversed) {
                if (t->kind != ExprKind::Ident || t->ident != step.ident)
                    mismatch("unfolding");
                replaced = sem.spec().defn(step.ident);
            } else {
                if (!expr_equal(t, sem.spec().defn(step.ident))) mismatch("folding");
                replaced = ident(step.ident);
            }
            break;
        }
        case RewriteStep::Kind::SeqHead: {
            if (!step.reversed) {
                replaced = seq_head_target(sem, t);
            } else {
                if (step.terms.empty()) throw RewriteError("undo step is missing the original");
                if (!expr_equal(seq_head_target(sem, step.terms[0]), t))
                    mismatch("seq-head-expansion undo");
                replaced = step.terms[0];
            }
            break;
        }
    }
    return set_at(term, step.path, 0, replaced);
}

ExprP replay(Semantics& sem, const ExprP& term, const std::vector<RewriteStep>& steps) {
    ExprP cur = term;
    for (const auto& s : steps) cur = apply_step(sem, cur, s);
    return cur;
}

}  // namespace pdaproc
