#include "pdaproc/convert.hpp"

#include <algorithm>
#include <map>

#include "pdaproc/rewrite.hpp"
#include "pdaproc/semantics.hpp"

namespace pdaproc {

namespace {

std::vector<std::string> push_word(const Pda& m, const std::vector<int>& push) {
    std::vector<std::string> w;
    for (int d : push) w.push_back("X_" + m.data[std::size_t(d)]);
    return w;
}

struct SummandBuild {
    std::size_t word_len;
    std::string act;
    std::vector<std::string> word;
    ExprP term;
};

// Stable construction order: the accepting summand first, then short words
// before long ones, then by action name.
void sort_summands(std::vector<SummandBuild>& xs) {
    std::stable_sort(xs.begin(), xs.end(), [](const SummandBuild& a, const SummandBuild& b) {
        if (a.word_len != b.word_len) return a.word_len < b.word_len;
        if (a.act != b.act) return a.act < b.act;
        return a.word < b.word;
    });
}

}  // namespace

Spec onestate_pda_to_spec(const Pda& m) {
    m.validate();
    if (m.states.size() != 1) throw Error("onestate_pda_to_spec requires exactly one state");
    Spec s;
    s.name = m.name + "_spec";
    s.mode = Mode::Seqc;
    s.init = "X";
    bool final = m.finals.count(0) != 0;

    bool has_empty = false;
    for (const auto& t : m.transitions)
        if (!t.pop) has_empty = true;
    if (!has_empty) {
        s.add("X", final ? accept() : deadlock());
        s.validate();
        return s;
    }

    // X: a summand a.(word(x) ; X) per empty-stack transition.
    {
        std::vector<SummandBuild> sums;
        for (const auto& t : m.transitions) {
            if (t.pop) continue;
            auto w = push_word(m, t.push);
            w.push_back("X");
            sums.push_back({t.push.size(), t.act.name(), w,
                            prefix(t.act, seq_word(w, Mode::Seqc))});
        }
        sort_summands(sums);
        std::vector<ExprP> leaves;
        if (final) leaves.push_back(accept());
        for (auto& sb : sums) leaves.push_back(sb.term);
        s.add("X", big_choice(leaves));
    }
    // X_d: a summand a.word(x) per transition popping d, plus 1 if final.
    for (std::size_t d = 0; d < m.data.size(); ++d) {
        std::vector<SummandBuild> sums;
        for (const auto& t : m.transitions) {
            if (!t.pop || *t.pop != int(d)) continue;
            auto w = push_word(m, t.push);
            sums.push_back({t.push.size(), t.act.name(), w,
                            prefix(t.act, seq_word(w, Mode::Seqc))});
        }
        sort_summands(sums);
        std::vector<ExprP> leaves;
        if (final) leaves.push_back(accept());
        for (auto& sb : sums) leaves.push_back(sb.term);
        s.add("X_" + m.data[d], big_choice(leaves));
    }
    s.validate();
    return s;
}

// ---------------------------------------------------------------------------
// Specification -> two-state PDA

namespace {

PdaConversion to_pda_core(const Spec& input, const TransformOptions& opt) {
    Spec aignf = to_aignf(input, opt);
    SeparationResult sep = separate(aignf, opt);
    const Spec& s = sep.spec;
    IdentClass cls = classify(s);
    Semantics sem(s);
    int nv = s.nvars();
    bool with_vars = nv > 0;
    Valuation vt = Valuation::all_true(nv);

    PdaConversion out;
    out.transformed = s;
    out.p_sep = sep.p_sep;

    Pda& m = out.pda;
    m.name = input.name + "_pda";
    m.states = {"n", "t"};
    const int N = 0, T = 1;
    m.finals = {T};
    for (const auto& [id, _] : s.equations) m.data.push_back(id);
    auto datum = [&](const std::string& id) { return m.datum_index(id); };

    bool init_acc = cls.accepting.count(s.init) != 0;
    m.init = init_acc ? T : N;

    for (const auto& [id, rhs] : s.equations) {
        auto eq = read_gnf(s, rhs);
        bool acc = cls.accepting.count(id) != 0;
        bool in_sep = sep.p_sep.count(id) != 0;
        int src = acc ? T : N;
        for (const auto& sum : eq->summands) {
            if (with_vars) {
                // Keep only valuation-collapsed steps: the guard must be
                // entailed by the root signal and the target word must be
                // consistent after the reset.
                if (eq->psi.is_false()) continue;
                if (!eq->psi.implies(sum.guard)) continue;
                if (!sem.cons(seq_word(sum.word, s.mode), vt)) continue;
            }
            int dst;
            if (acc || in_sep) {
                bool to_acc = sum.word.empty() || cls.accepting.count(sum.word.front()) != 0;
                dst = to_acc ? T : N;
            } else {
                dst = N;
            }
            PdaTransition tr;
            tr.src = src;
            tr.act = sum.act;
            tr.pop = datum(id);
            for (const auto& x : sum.word) tr.push.push_back(datum(x));
            tr.dst = dst;
            m.transitions.push_back(tr);
            if (id == s.init) {
                PdaTransition e = tr;
                e.pop.reset();
                m.transitions.push_back(e);
            }
        }
    }
    m.validate();
    return out;
}

}  // namespace

PdaConversion spec_to_pda(const Spec& spec, const TransformOptions& opt) {
    if (!spec.vars.empty())
        throw Error("spec_to_pda expects a signal-free specification (use signal_spec_to_pda)");
    if (spec.mode != Mode::Seqc) throw Error("spec_to_pda requires a seqc specification");
    return to_pda_core(spec, opt);
}

PdaConversion signal_spec_to_pda(const Spec& spec, const TransformOptions& opt) {
    if (spec.mode != Mode::Seqc) throw Error("signal_spec_to_pda requires a seqc specification");
    return to_pda_core(spec, opt);
}

// ---------------------------------------------------------------------------
// PDA -> specification with signals and conditions

Spec pda_to_signal_spec(const Pda& m) {
    m.validate();
    Spec s;
    s.name = m.name + "_spec";
    s.mode = Mode::Seqc;
    s.init = "X";

    bool init_final = m.finals.count(m.init) != 0;
    bool has_empty_from_init = false;
    for (const auto& t : m.transitions)
        if (!t.pop && t.src == m.init) has_empty_from_init = true;
    if (!has_empty_from_init) {
        s.add("X", init_final ? accept() : deadlock());
        s.validate();
        return s;
    }

    for (const auto& st : m.states) s.vars.push_back("state_" + st);
    int nv = int(s.vars.size());
    auto state_prop = [&](int st) { return Prop::variable(nv, st); };

    // X: summands for the empty-stack transitions from the initial state.
    {
        std::vector<ExprP> leaves;
        if (init_final) leaves.push_back(accept());
        for (const auto& t : m.transitions) {
            if (t.pop || t.src != m.init) continue;
            auto w = push_word(m, t.push);
            w.push_back("X_eps");
            leaves.push_back(prefix(t.act, signal(state_prop(t.dst), seq_word(w, Mode::Seqc))));
        }
        s.add("X", big_choice(leaves));
    }
    // X_d: guarded summands per transition popping d; acceptance per final state.
    for (std::size_t d = 0; d < m.data.size(); ++d) {
        std::vector<ExprP> leaves;
        for (const auto& t : m.transitions) {
            if (!t.pop || *t.pop != int(d)) continue;
            auto w = push_word(m, t.push);
            leaves.push_back(guard(state_prop(t.src),
                                   prefix(t.act, signal(state_prop(t.dst),
                                                        seq_word(w, Mode::Seqc)))));
        }
        for (int f : m.finals) leaves.push_back(guard(state_prop(f), accept()));
        s.add("X_" + m.data[d], big_choice(leaves));
    }
    // X_eps: like X_d but for the empty stack, continuing with X_eps.
    {
        std::vector<ExprP> leaves;
        for (const auto& t : m.transitions) {
            if (t.pop) continue;
            auto w = push_word(m, t.push);
            w.push_back("X_eps");
            leaves.push_back(guard(state_prop(t.src),
                                   prefix(t.act, signal(state_prop(t.dst),
                                                        seq_word(w, Mode::Seqc)))));
        }
        for (int f : m.finals) leaves.push_back(guard(state_prop(f), accept()));
        s.add("X_eps", big_choice(leaves));
    }
    s.validate();
    if (auto w = check_guarded(s)) throw GuardednessError(*w);
    return s;
}

}  // namespace pdaproc
