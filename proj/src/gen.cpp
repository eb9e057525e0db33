#include "pdaproc/gen.hpp"

#include <algorithm>

#include "pdaproc/bisim.hpp"

namespace pdaproc::gen {

namespace {

int pick(Rng& rng, int n) { return int(rng() % std::uint64_t(n)); }

Action random_action(Rng& rng, const std::vector<std::string>& actions) {
    int i = pick(rng, int(actions.size()) + 1);
    if (i == int(actions.size())) return Action::silent();
    return Action::named(actions[std::size_t(i)]);
}

}  // namespace

Prop random_prop(Rng& rng, int nvars) {
    // A random bit per valuation row, occasionally constants.
    int kind = pick(rng, 10);
    if (kind == 0) return Prop::constant(nvars, false);
    if (kind == 1) return Prop::constant(nvars, true);
    Prop p = Prop::constant(nvars, false);
    for (std::uint64_t r = 0; r < (std::uint64_t(1) << nvars); ++r)
        if (rng() & 1) {
            Prop row = Prop::constant(nvars, true);
            for (int i = 0; i < nvars; ++i) {
                Prop v = Prop::variable(nvars, i);
                row = row & (((r >> i) & 1) ? v : !v);
            }
            p = p | row;
        }
    return p;
}

ExprP random_term(Rng& rng, const Spec& ctx, const TermConfig& cfg) {
    int nv = ctx.nvars();
    std::function<ExprP(int)> go = [&](int depth) -> ExprP {
        int atoms = 2;
        int branches = depth <= 0 ? 0 : (4 + (cfg.with_na ? 1 : 0) + (cfg.with_props ? 2 : 0));
        int k = pick(rng, atoms + branches);
        switch (k) {
            case 0: return deadlock();
            case 1: return accept();
            case 2: return prefix(random_action(rng, cfg.actions), go(depth - 1));
            case 3: return choice(go(depth - 1), go(depth - 1));
            case 4:
                return cfg.mode == Mode::Seqc ? seq(go(depth - 1), go(depth - 1))
                                              : seq_legacy(go(depth - 1), go(depth - 1));
            case 5: return prefix(random_action(rng, cfg.actions), go(depth - 1));
            case 6:
                if (cfg.with_na) return na(go(depth - 1));
                return guard(random_prop(rng, nv), go(depth - 1));
            case 7: return guard(random_prop(rng, nv), go(depth - 1));
            default: return signal(random_prop(rng, nv), go(depth - 1));
        }
    };
    return go(cfg.max_depth);
}

Spec random_guarded_spec(Rng& rng, const SpecConfig& cfg, const std::string& name) {
    Spec s;
    s.name = name;
    s.mode = Mode::Seqc;
    std::vector<std::string> ids;
    for (int i = 0; i < cfg.idents; ++i) ids.push_back("P" + std::to_string(i));
    s.init = ids[0];
    for (int i = 0; i < cfg.idents; ++i) {
        std::vector<ExprP> leaves;
        if (std::uniform_real_distribution<double>(0, 1)(rng) < cfg.accept_prob)
            leaves.push_back(accept());
        int ns = 1 + pick(rng, cfg.max_summands);
        for (int j = 0; j < ns; ++j) {
            int wl = pick(rng, cfg.max_word + 1);
            std::vector<std::string> word;
            for (int w = 0; w < wl; ++w) word.push_back(ids[std::size_t(pick(rng, cfg.idents))]);
            Action a = Action::named(cfg.actions[std::size_t(pick(rng, int(cfg.actions.size())))]);
            leaves.push_back(prefix(a, seq_word(word, Mode::Seqc)));
        }
        s.add(ids[std::size_t(i)], big_choice(leaves));
    }
    s.validate();
    return s;
}

// ---------------------------------------------------------------------------
// Axiom instantiation

namespace {

ExprP random_signal_free(Rng& rng, const Spec& ctx, Mode mode, int depth) {
    TermConfig cfg;
    cfg.max_depth = depth;
    cfg.with_props = false;
    cfg.mode = mode;
    return random_term(rng, ctx, cfg);
}

ExprP random_full(Rng& rng, const Spec& ctx, int depth) {
    TermConfig cfg;
    cfg.max_depth = depth;
    cfg.with_props = ctx.nvars() > 0;
    return random_term(rng, ctx, cfg);
}

// Nonempty sum of action prefixes whose bodies are consistent after the
// reset; the shape sequencing-expansion arguments take.
ExprP random_prefix_sum(Rng& rng, const Spec& ctx, Semantics& sem) {
    Valuation vt = Valuation::all_true(ctx.nvars());
    int n = 1 + pick(rng, 2);
    std::vector<ExprP> leaves;
    for (int i = 0; i < n; ++i) {
        ExprP body;
        do {
            body = random_full(rng, ctx, 2);
        } while (!sem.cons(body, vt));
        leaves.push_back(prefix(random_action(rng, {"a", "b", "c"}), body));
    }
    return big_choice(leaves);
}

ExprP sq(Mode m, ExprP a, ExprP b) {
    return m == Mode::Seqc ? seq(std::move(a), std::move(b))
                           : seq_legacy(std::move(a), std::move(b));
}

}  // namespace

std::pair<ExprP, ExprP> instantiate_axiom(Rng& rng, const Spec& ctx, AxiomId id, Mode mode) {
    int nv = ctx.nvars();
    Prop tru = Prop::constant(nv, true);
    Prop fls = Prop::constant(nv, false);
    Semantics sem(ctx);
    auto sf = [&](int d = 3) { return random_signal_free(rng, ctx, mode, d); };
    auto full = [&](int d = 3) { return random_full(rng, ctx, d); };
    auto act = [&]() { return random_action(rng, {"a", "b", "c"}); };
    auto prop = [&]() { return random_prop(rng, nv); };
    switch (id) {
        case AxiomId::A1: {
            ExprP x = sf(), y = sf();
            return {choice(x, y), choice(y, x)};
        }
        case AxiomId::A2: {
            ExprP x = sf(), y = sf(), z = sf();
            return {choice(x, choice(y, z)), choice(choice(x, y), z)};
        }
        case AxiomId::A3: {
            ExprP x = sf();
            return {choice(x, x), x};
        }
        case AxiomId::A4: {
            ExprP x = sf(), y = sf(), z = sf();
            return {sq(mode, choice(x, y), z), choice(sq(mode, x, z), sq(mode, y, z))};
        }
        case AxiomId::A5: {
            ExprP x = sf(), y = sf(), z = sf();
            return {sq(mode, sq(mode, x, y), z), sq(mode, x, sq(mode, y, z))};
        }
        case AxiomId::A6: {
            ExprP x = sf();
            return {choice(x, deadlock()), x};
        }
        case AxiomId::A7: return {sq(mode, deadlock(), sf()), deadlock()};
        case AxiomId::A8: {
            ExprP x = sf();
            return {sq(mode, x, accept()), x};
        }
        case AxiomId::A9: {
            ExprP x = sf();
            return {sq(mode, accept(), x), x};
        }
        case AxiomId::A10: {
            ExprP x = sf(), y = sf();
            Action a = act();
            return {sq(mode, prefix(a, x), y), prefix(a, sq(mode, x, y))};
        }
        case AxiomId::A11: {
            ExprP x = sf(), y = sf(), z = sf();
            return {sq(mode, na(choice(x, y)), z),
                    choice(sq(mode, na(x), z), sq(mode, na(y), z))};
        }
        case AxiomId::A12: {
            ExprP x = sf(), y = sf(), z = sf();
            Action a = act();
            ExprP lhs_left = choice(choice(prefix(a, x), y), accept());
            return {sq(mode, lhs_left, na(z)), sq(mode, choice(prefix(a, x), y), na(z))};
        }
        case AxiomId::A13: {
            ExprP x = sf(), y = sf(), z = sf();
            Action a = act();
            ExprP lhs_left = choice(choice(prefix(a, x), y), accept());
            ExprP right = choice(z, accept());
            return {sq(mode, lhs_left, right),
                    choice(sq(mode, choice(prefix(a, x), y), right), accept())};
        }
        case AxiomId::C1: {
            ExprP x = full();
            return {guard(tru, x), x};
        }
        case AxiomId::C2: return {guard(fls, full()), deadlock()};
        case AxiomId::C3: {
            Prop f = prop(), g = prop();
            ExprP x = full();
            return {guard(f | g, x), choice(guard(f, x), guard(g, x))};
        }
        case AxiomId::C4: {
            Prop f = prop(), g = prop();
            ExprP x = full();
            return {guard(f & g, x), guard(f, guard(g, x))};
        }
        case AxiomId::C5: {
            Prop f = prop();
            ExprP x = full(), y = full();
            return {guard(f, choice(x, y)), choice(guard(f, x), guard(f, y))};
        }
        case AxiomId::C6: {
            Prop f = prop();
            ExprP x = full(), y = full();
            return {guard(f, seq(x, y)), seq(guard(f, x), y)};
        }
        case AxiomId::C7: {
            Prop f = prop();
            ExprP x = full();
            return {guard(f, na(x)), na(guard(f, x))};
        }
        case AxiomId::C8: {
            Prop f = prop(), g = prop();
            ExprP x = random_prefix_sum(rng, ctx, sem);
            ExprP y = random_prefix_sum(rng, ctx, sem);
            ExprP right = choice(na(y), guard(g, accept()));
            return {seq(choice(na(x), guard(f, accept())), right),
                    choice(seq(na(x), right), guard(f & g, accept()))};
        }
        case AxiomId::SI1: {
            ExprP x = full();
            return {signal(tru, x), x};
        }
        case AxiomId::SI2: return {signal(fls, full()), signal(fls, deadlock())};
        case AxiomId::SI3: return {prefix(act(), signal(fls, full())), deadlock()};
        case AxiomId::SI4: {
            Prop f = prop();
            ExprP x = full(), y = full();
            return {choice(signal(f, x), y), signal(f, choice(x, y))};
        }
        case AxiomId::SI5: {
            Prop f = prop(), g = prop();
            ExprP x = full();
            return {signal(f, signal(g, x)), signal(f & g, x)};
        }
        case AxiomId::SI6: {
            Prop f = prop(), g = prop();
            ExprP x = full();
            return {guard(f, signal(g, x)), signal(!f | g, guard(f, x))};
        }
        case AxiomId::SI7: {
            Prop f = prop();
            ExprP x = full();
            return {signal(f, guard(f, x)), signal(f, x)};
        }
        case AxiomId::SI8: {
            Prop f = prop();
            ExprP x = full(), y = full();
            return {signal(f, seq(x, y)), seq(signal(f, x), y)};
        }
        case AxiomId::SI9: {
            Prop f = prop();
            ExprP x = full();
            return {signal(f, na(x)), na(signal(f, x))};
        }
        case AxiomId::R: {
            // sigma with sigma(v_true) = false
            Prop conj = Prop::constant(nv, true);
            for (int i = 0; i < nv; ++i) conj = conj & Prop::variable(nv, i);
            Prop sigma = prop() & !conj;
            return {prefix(act(), signal(sigma, full())), deadlock()};
        }
    }
    throw Error("unknown axiom");
}

std::vector<SoundnessRow> axiom_soundness(Mode mode, unsigned long seed, int count) {
    Spec ctx;
    ctx.name = "ctx";
    ctx.mode = mode;
    if (mode == Mode::Seqc) ctx.vars = {"P", "Q"};
    ctx.init = "X0";
    ctx.add("X0", accept());
    ctx.validate();

    auto sound = [&](const ExprP& l, const ExprP& r) {
        if (mode == Mode::Seqc) return stateless_bisimilar(ctx, l, r).bisimilar;
        Bounds b{64, 100000};
        Lts gl = explore_expr(ctx, l, b, SemanticsKind::Plain);
        Lts gr = explore_expr(ctx, r, b, SemanticsKind::Plain);
        int k = int(std::max(gl.states.size(), gr.states.size())) + 1;
        return k_bisimilar(gl, gr, k).equivalent;
    };

    std::vector<SoundnessRow> rows;
    for (const auto& info : axiom_table()) {
        bool applicable = !(info.seq_only && mode == Mode::Seqc) &&
                          !(info.seqc_only && mode == Mode::Seq) &&
                          !(info.needs_props && mode == Mode::Seq);
        // The failed distributive law is kept in the seqc run on purpose.
        if (info.id == AxiomId::A4 && mode == Mode::Seqc) applicable = true;
        if (!applicable) continue;
        SoundnessRow row{info.id, 0, 0, ""};
        Rng rng(seed ^ (0x9e37u + unsigned(info.id) * 0x85ebca6bu));
        for (int i = 0; i < count; ++i) {
            auto [l, r] = instantiate_axiom(rng, ctx, info.id, mode);
            if (sound(l, r)) {
                ++row.passed;
            } else {
                ++row.failed;
                if (row.first_failure.empty())
                    row.first_failure =
                        print_expr(l, ctx.vars) + "  !=  " + print_expr(r, ctx.vars);
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace pdaproc::gen
