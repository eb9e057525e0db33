#include "pdaproc/normal.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

#include "pdaproc/bisim.hpp"
#include "pdaproc/rewrite.hpp"

namespace pdaproc {

namespace {

bool derived_accepting(Semantics& sem, const std::string& id) {
    try {
        return sem.accepts_derived(ident(id));
    } catch (const Error&) {
        return false;  // no consistent valuation: never accepting
    }
}

void validate_transform(const Spec& before, const Spec& after, const TransformOptions& opt,
                        const char* what) {
    if (!opt.validate) return;
    SemanticsKind kind = before.vars.empty() ? SemanticsKind::Plain : SemanticsKind::Derived;
    Lts a = explore_spec(before, opt.validate_bounds, kind);
    Lts b = explore_spec(after, opt.validate_bounds, kind);
    int k = std::min({opt.validate_k, a.explored_depth, b.explored_depth});
    auto v = k_bisimilar(a, b, k);
    if (!v.equivalent)
        throw Error(std::string(what) + ": transformed specification is not bisimilar to the "
                                        "input (validation failed)");
}

}  // namespace

IdentClass classify(const Spec& spec) {
    Semantics sem(spec);
    IdentClass cls;
    for (const auto& [id, _] : spec.equations) {
        bool acc = spec.vars.empty() ? sem.accepts_plain(ident(id)) : derived_accepting(sem, id);
        (acc ? cls.accepting : cls.nonaccepting).insert(id);
    }
    // Greatest fixpoint: non-accepting identifiers whose bodies mention only
    // identifiers still in the set.
    cls.hereditary = cls.nonaccepting;
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = cls.hereditary.begin(); it != cls.hereditary.end();) {
            bool ok = true;
            for (const auto& y : free_idents(spec.defn(*it)))
                if (!cls.hereditary.count(y)) ok = false;
            if (!ok) {
                it = cls.hereditary.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
    }
    return cls;
}

bool is_acceptance_irredundant(const std::vector<std::string>& word, const IdentClass& cls) {
    for (const auto& x : word)
        if (!cls.accepting.count(x) && !cls.nonaccepting.count(x))
            throw Error("undefined identifier in word: " + x);
    int last_nt = -1;
    for (int i = 0; i < int(word.size()); ++i)
        if (cls.nonaccepting.count(word[std::size_t(i)])) last_nt = i;
    if (last_nt < 0) return true;
    for (int i = 0; i < last_nt; ++i)
        if (!cls.hereditary.count(word[std::size_t(i)])) return false;
    return true;
}

bool is_separated(const std::vector<std::string>& word, const std::set<std::string>& sep,
                  const IdentClass& cls) {
    int last_nt = -1;
    for (int i = 0; i < int(word.size()); ++i)
        if (cls.nonaccepting.count(word[std::size_t(i)])) last_nt = i;
    if (last_nt < 0) return true;
    if (!sep.count(word[std::size_t(last_nt)])) return false;
    for (int i = 0; i < last_nt; ++i) {
        const auto& x = word[std::size_t(i)];
        if (!cls.hereditary.count(x) || sep.count(x)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Reading GNF shapes

namespace {

std::optional<std::vector<std::string>> word_of(const ExprP& e, Mode mode) {
    return as_word(e, mode);
}

}  // namespace

std::optional<GnfEq> read_gnf(const Spec& spec, const ExprP& rhs) {
    int nv = spec.nvars();
    GnfEq eq;
    eq.psi = Prop::constant(nv, true);
    eq.chi = Prop::constant(nv, false);
    bool saw_accept = false;
    for (const auto& leaf : flatten_choice(rhs)) {
        if (leaf->kind == ExprKind::Accept) {
            if (saw_accept) return std::nullopt;
            saw_accept = true;
            eq.chi = Prop::constant(nv, true);
            continue;
        }
        ExprP body = leaf;
        Prop g = Prop::constant(nv, true);
        if (body->kind == ExprKind::Guard && body->a->kind != ExprKind::Accept) {
            g = body->prop;
            body = body->a;
        }
        if (body->kind == ExprKind::Prefix) {
            auto w = word_of(body->a, spec.mode);
            if (!w) return std::nullopt;
            for (const auto& x : *w)
                if (!spec.has(x)) return std::nullopt;
            eq.summands.push_back({g, body->act, *w});
            continue;
        }
        // Acceptance-condition leaves: 1, [chi] -> 1, [psi]^^ 1, [psi]^^ ([chi] -> 1).
        if (saw_accept) return std::nullopt;
        Prop psi = Prop::constant(nv, true), chi = Prop::constant(nv, true);
        ExprP t = leaf;
        if (t->kind == ExprKind::Signal) {
            psi = t->prop;
            t = t->a;
        }
        if (t->kind == ExprKind::Guard) {
            chi = t->prop;
            t = t->a;
        }
        if (t->kind != ExprKind::Accept) return std::nullopt;
        saw_accept = true;
        eq.psi = psi;
        eq.chi = chi;
    }
    return eq;
}

// ---------------------------------------------------------------------------
// GNF

namespace {

struct FreshNames {
    std::set<std::string> used;
    int counter = 0;

    std::string take(const std::string& base) {
        std::string name = base;
        while (used.count(name)) name += "'";
        used.insert(name);
        return name;
    }
    std::string next() {
        for (;;) {
            std::string name = "F" + std::to_string(counter++);
            if (!used.count(name)) {
                used.insert(name);
                return name;
            }
        }
    }
};

// Sequencing factors of an expression with conditions and signals pushed
// onto the first factor; a deadlock factor cuts the word.
std::vector<ExprP> gnf_factors(const ExprP& e) {
    std::vector<ExprP> out;
    bool dead = false;
    std::function<void(const ExprP&)> go = [&](const ExprP& t) {
        if (dead) return;
        switch (t->kind) {
            case ExprKind::Accept: return;
            case ExprKind::Seq:
                go(t->a);
                go(t->b);
                return;
            case ExprKind::Deadlock:
                out.push_back(t);
                dead = true;
                return;
            case ExprKind::Signal:
            case ExprKind::Guard: {
                std::size_t before = out.size();
                bool was_dead = false;
                go(t->a);
                was_dead = dead;
                dead = false;
                ExprP first;
                std::vector<ExprP> tail;
                if (out.size() == before) {
                    first = accept();
                } else {
                    first = out[before];
                    tail.assign(out.begin() + long(before) + 1, out.end());
                    out.resize(before);
                }
                // Merge stacked decorations so equal factors share an entry.
                ExprP wrapped;
                if (t->kind == ExprKind::Signal) {
                    wrapped = first->kind == ExprKind::Signal
                                  ? signal(t->prop & first->prop, first->a)
                                  : signal(t->prop, first);
                } else {
                    wrapped = first->kind == ExprKind::Guard
                                  ? guard(t->prop & first->prop, first->a)
                                  : guard(t->prop, first);
                }
                out.push_back(wrapped);
                for (auto& f : tail) out.push_back(f);
                dead = was_dead;
                return;
            }
            default: out.push_back(t); return;
        }
    };
    go(e);
    return out;
}

struct GnfBuilder {
    const Spec& input;
    Semantics sem;
    Spec out;
    FreshNames names;
    std::map<ExprP, std::string, ExprLess> factor_ident;
    std::deque<std::pair<std::string, ExprP>> todo;

    explicit GnfBuilder(const Spec& spec) : input(spec), sem(spec) {
        out.name = spec.name;
        out.mode = spec.mode;
        out.vars = spec.vars;
        out.declared_alphabet = spec.declared_alphabet;
        out.init = spec.init;
        for (const auto& [id, _] : spec.equations) names.used.insert(id);
    }

    std::string ident_for_factor(const ExprP& f) {
        if (f->kind == ExprKind::Ident) return f->ident;
        auto it = factor_ident.find(f);
        if (it != factor_ident.end()) return it->second;
        std::string name = names.next();
        factor_ident.emplace(f, name);
        out.add(name, deadlock());  // reserve slot; filled when processed
        todo.emplace_back(name, f);
        return name;
    }

    std::vector<std::string> to_word(const ExprP& tail) {
        std::vector<std::string> word;
        for (const auto& f : gnf_factors(tail)) word.push_back(ident_for_factor(f));
        return word;
    }

    ExprP equation_term(const GnfEq& eq) {
        std::vector<HnfSummand> hs;
        for (const auto& s : eq.summands)
            hs.push_back({s.guard, s.act, seq_word(s.word, out.mode)});
        return hnf_term(input, hs, eq.psi, eq.chi);
    }

    void process(const std::string& id, const ExprP& rhs) {
        if (auto ready = read_gnf(input, rhs)) {
            // Already in shape: keep the equation verbatim.
            if (out.has(id))
                out.replace(id, rhs);
            else
                out.add(id, rhs);
            return;
        }
        GnfEq eq;
        Hnf h = hnf(sem, rhs);
        if (!input.vars.empty() && h.psi.satisfiable()) h = reduce_hnf(sem, h);
        eq.psi = h.psi;
        eq.chi = h.psi.satisfiable() ? h.chi : Prop::constant(input.nvars(), false);
        if (h.psi.satisfiable())
            for (const auto& s : h.summands) eq.summands.push_back({s.guard, s.act, to_word(s.tail)});
        ExprP term = equation_term(eq);
        if (out.has(id))
            out.replace(id, term);
        else
            out.add(id, term);
    }

    Spec run() {
        for (const auto& [id, rhs] : input.equations) process(id, rhs);
        while (!todo.empty()) {
            auto [id, f] = todo.front();
            todo.pop_front();
            process(id, f);
        }
        out.validate();
        return out;
    }
};

}  // namespace

Spec to_gnf(const Spec& spec, const TransformOptions& opt) {
    if (spec.mode != Mode::Seqc) throw Error("to_gnf requires a seqc specification");
    if (auto w = check_guarded(spec)) throw GuardednessError(*w);
    GnfBuilder builder(spec);
    Spec g = builder.run();
    validate_transform(spec, g, opt, "to_gnf");
    return g;
}

// ---------------------------------------------------------------------------
// AIGNF

namespace {

struct GnfView {
    std::map<std::string, GnfEq> eqs;

    static GnfView of(const Spec& spec) {
        GnfView v;
        for (const auto& [id, rhs] : spec.equations) {
            auto eq = read_gnf(spec, rhs);
            if (!eq) throw Error("specification is not in Greibach normal form (equation for " +
                                 id + ")");
            v.eqs.emplace(id, *eq);
        }
        return v;
    }
};

Spec spec_from_view(const Spec& base, const std::vector<std::pair<std::string, GnfEq>>& eqs) {
    Spec out;
    out.name = base.name;
    out.mode = base.mode;
    out.vars = base.vars;
    out.declared_alphabet = base.declared_alphabet;
    out.init = base.init;
    for (const auto& [id, eq] : eqs) {
        std::vector<HnfSummand> hs;
        for (const auto& s : eq.summands)
            hs.push_back({s.guard, s.act, seq_word(s.word, base.mode)});
        out.add(id, hnf_term(base, hs, eq.psi, eq.chi));
    }
    return out;
}

// Keeps equations reachable from the init identifier (plus all original
// identifiers of `keep`).
std::vector<std::pair<std::string, GnfEq>> prune_unreachable(
    const std::vector<std::pair<std::string, GnfEq>>& eqs, const std::string& init,
    const std::set<std::string>& keep) {
    std::map<std::string, const GnfEq*> by_name;
    for (const auto& [id, eq] : eqs) by_name[id] = &eq;
    std::set<std::string> live;
    std::deque<std::string> q;
    auto mark = [&](const std::string& x) {
        if (live.insert(x).second) q.push_back(x);
    };
    mark(init);
    for (const auto& k : keep) mark(k);
    while (!q.empty()) {
        std::string x = q.front();
        q.pop_front();
        auto it = by_name.find(x);
        if (it == by_name.end()) continue;
        for (const auto& s : it->second->summands)
            for (const auto& y : s.word) mark(y);
    }
    std::vector<std::pair<std::string, GnfEq>> out;
    for (const auto& e : eqs)
        if (live.count(e.first)) out.push_back(e);
    return out;
}

}  // namespace

Spec to_aignf(const Spec& spec, const TransformOptions& opt) {
    TransformOptions inner = opt;
    inner.validate = false;
    Spec g = to_gnf(spec, inner);
    GnfView view = GnfView::of(g);
    int nv = g.nvars();
    Prop tru = Prop::constant(nv, true);

    // Inline identifiers defined as exactly 1; cut words at identifiers
    // defined as exactly 0.
    std::set<std::string> ones, zeros;
    for (const auto& [id, eq] : view.eqs) {
        if (!eq.summands.empty()) continue;
        if (eq.psi == tru && eq.chi == tru) ones.insert(id);
        if (eq.psi == tru && eq.chi.is_false()) zeros.insert(id);
    }
    std::vector<std::pair<std::string, GnfEq>> eqs;
    for (const auto& [id, rhs] : g.equations) {
        GnfEq eq = view.eqs.at(id);
        for (auto& s : eq.summands) {
            std::vector<std::string> w;
            for (const auto& x : s.word) {
                if (ones.count(x)) continue;
                w.push_back(x);
                if (zeros.count(x)) break;
            }
            s.word = std::move(w);
        }
        eqs.emplace_back(id, std::move(eq));
    }

    // Classification of the inlined spec.
    std::set<std::string> originals;
    for (const auto& [id, _] : spec.equations) originals.insert(id);
    Spec inlined = spec_from_view(g, eqs);
    IdentClass cls = classify(inlined);

    // Acceptance-stripped variants: X#na behaves like X but never accepts,
    // and everything inside its words is stripped as well.
    FreshNames names;
    for (const auto& [id, _] : eqs) names.used.insert(id);
    std::map<std::string, std::string> variant;
    std::deque<std::string> vtodo;
    std::function<std::string(const std::string&)> variant_of = [&](const std::string& x) {
        auto it = variant.find(x);
        if (it != variant.end()) return it->second;
        std::string vn = names.take(x + "#na");
        variant.emplace(x, vn);
        variant.emplace(vn, vn);  // variants are their own variants
        vtodo.push_back(x);
        return vn;
    };

    auto word_has_nt_after = [&](const std::vector<std::string>& w, std::size_t i) {
        for (std::size_t j = i + 1; j < w.size(); ++j)
            if (cls.nonaccepting.count(w[j])) return true;
        return false;
    };

    std::vector<std::pair<std::string, GnfEq>> out_eqs;
    for (auto& [id, eq] : eqs) {
        GnfEq ne = eq;
        for (auto& s : ne.summands)
            for (std::size_t i = 0; i < s.word.size(); ++i)
                if (word_has_nt_after(s.word, i)) s.word[i] = variant_of(s.word[i]);
        out_eqs.emplace_back(id, std::move(ne));
    }
    // Materialize variant equations (fully stripped words, no acceptance).
    std::set<std::string> emitted;
    while (!vtodo.empty()) {
        std::string x = vtodo.front();
        vtodo.pop_front();
        if (!emitted.insert(x).second) continue;
        GnfEq src;
        for (const auto& [id, eq] : eqs)
            if (id == x) src = eq;
        GnfEq ne;
        ne.psi = src.psi;
        ne.chi = Prop::constant(nv, false);
        for (const auto& s : src.summands) {
            GnfSummand ns = s;
            for (auto& y : ns.word) y = variant_of(y);
            ne.summands.push_back(std::move(ns));
        }
        out_eqs.emplace_back(variant.at(x), std::move(ne));
    }

    out_eqs = prune_unreachable(out_eqs, g.init, originals);
    Spec result = spec_from_view(g, out_eqs);
    result.validate();

    // The construction is validated, not trusted: words must be acceptance
    // irredundant and the behaviour preserved.
    IdentClass rcls = classify(result);
    for (const auto& [id, rhs] : result.equations) {
        auto eq = read_gnf(result, rhs);
        for (const auto& s : eq->summands)
            if (!is_acceptance_irredundant(s.word, rcls))
                throw Error("to_aignf: produced a redundant word in equation for " + id);
    }
    validate_transform(spec, result, opt, "to_aignf");
    return result;
}

// ---------------------------------------------------------------------------
// Separation

SeparationResult separate(const Spec& spec, const TransformOptions& opt) {
    GnfView view = GnfView::of(spec);
    IdentClass cls = classify(spec);
    for (const auto& [id, eq] : view.eqs)
        for (const auto& s : eq.summands)
            if (!is_acceptance_irredundant(s.word, cls))
                throw Error("separate requires an AIGNF specification (equation for " + id + ")");

    SeparationResult res;
    res.p_sep = cls.nonaccepting;

    FreshNames names;
    for (const auto& [id, _] : spec.equations) names.used.insert(id);
    std::map<std::string, std::string> dag;
    std::deque<std::string> todo;
    std::function<std::string(const std::string&)> dag_of = [&](const std::string& x) {
        auto it = dag.find(x);
        if (it != dag.end()) return it->second;
        if (!cls.hereditary.count(x))
            throw Error("separate: identifier before the acceptance boundary is not hereditarily "
                        "non-accepting: " + x);
        std::string dn = names.take(x + "#dag");
        dag.emplace(x, dn);
        dag.emplace(dn, dn);
        todo.push_back(x);
        return dn;
    };

    auto dagger_word = [&](const std::vector<std::string>& w) {
        int last_nt = -1;
        for (int i = 0; i < int(w.size()); ++i)
            if (cls.nonaccepting.count(w[std::size_t(i)])) last_nt = i;
        std::vector<std::string> out = w;
        for (int i = 0; i < last_nt; ++i) out[std::size_t(i)] = dag_of(w[std::size_t(i)]);
        return out;
    };

    std::vector<std::pair<std::string, GnfEq>> eqs;
    for (const auto& [id, rhs] : spec.equations) {
        GnfEq eq = view.eqs.at(id);
        for (auto& s : eq.summands) s.word = dagger_word(s.word);
        eqs.emplace_back(id, std::move(eq));
    }
    std::set<std::string> emitted;
    while (!todo.empty()) {
        std::string x = todo.front();
        todo.pop_front();
        if (!emitted.insert(x).second) continue;
        GnfEq src = view.eqs.at(x);
        GnfEq ne;
        ne.psi = src.psi;
        ne.chi = src.chi;
        for (const auto& s : src.summands) {
            GnfSummand ns = s;
            for (auto& y : ns.word)
                if (cls.nonaccepting.count(y)) y = dag_of(y);
            ne.summands.push_back(std::move(ns));
        }
        eqs.emplace_back(dag.at(x), std::move(ne));
    }
    res.spec = spec_from_view(spec, eqs);
    res.spec.validate();
    validate_transform(spec, res.spec, opt, "separate");
    return res;
}

}  // namespace pdaproc
