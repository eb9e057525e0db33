#include "pdaproc/repro.hpp"

#include <sstream>

#include "pdaproc/bisim.hpp"
#include "pdaproc/convert.hpp"
#include "pdaproc/corpus.hpp"
#include "pdaproc/normal.hpp"
#include "pdaproc/parser.hpp"
#include "pdaproc/semantics.hpp"

namespace pdaproc::repro {

namespace {

std::string fig1() { return print_pda(parse_pda(corpus::counter_pda())); }

std::string fig2() {
    Lts g = explore_pda(parse_pda(corpus::counter_pda()), Bounds{12, 50000});
    return write_aut(g);
}

// The sequential-composition reading of the counter-like specification:
// exploring it exhibits the growing out-degrees along the a-chain.
std::string fig3_4() {
    Spec s = parse_spec(corpus::difference_seq_spec());
    Lts g = explore_spec(s, Bounds{6, 50000}, SemanticsKind::Plain);
    std::ostringstream os;
    os << write_aut(g);
    os << write_text(g);
    return os.str();
}

std::string fig7() { return print_pda(parse_pda(corpus::twostate_pda())); }

std::string fig8() {
    Lts g = explore_pda(parse_pda(corpus::twostate_pda()), Bounds{12, 50000});
    return write_aut(g);
}

std::string fig9() {
    auto conv = spec_to_pda(parse_spec(corpus::fig9_spec()));
    std::ostringstream os;
    os << print_pda(conv.pda);
    os << "separating identifiers:";
    for (const auto& x : conv.p_sep) os << " " << x;
    os << "\n";
    return os.str();
}

std::string counter_spec_text() { return print_spec(parse_spec(corpus::counter_spec())); }

std::string stack() {
    return print_spec(onestate_pda_to_spec(parse_pda(corpus::stack_pda())));
}

std::string cointoss() {
    Spec s = parse_spec(corpus::cointoss_spec());
    Lts g = explore_spec(s, Bounds{16, 50000}, SemanticsKind::Derived);
    auto min = partition_refine(g);
    std::ostringstream os;
    os << print_spec(s);
    os << "derived graph:\n" << write_aut(g);
    os << "minimized:\n" << write_aut(min.quotient);
    return os.str();
}

std::string separate_example() {
    Spec s = parse_spec(corpus::nonseparation_spec());
    auto res = separate(to_aignf(s));
    std::ostringstream os;
    os << print_spec(res.spec);
    os << "separating identifiers:";
    for (const auto& x : res.p_sep) os << " " << x;
    os << "\n";
    return os.str();
}

// Evidence report for the two-state pushdown process that no guarded
// sequential specification matches: from every column of the ladder, the
// number of b-steps available before and after the c-switch is tied to the
// stack height, while the branching stays bounded.
std::string nospec_evidence() {
    Pda m = parse_pda(corpus::twostate_pda());
    std::ostringstream os;
    os << "branching degree: " << branching_degree(m) << "\n";
    for (int i = 0; i <= 6; ++i) {
        Config c{m.init, std::vector<int>(std::size_t(i), 0)};
        // consecutive b's without a c
        int before = 0;
        Config cur = c;
        for (;;) {
            bool moved = false;
            for (auto& [a, nxt] : pda_steps(m, cur))
                if (!a.tau && a.label == "b") {
                    cur = nxt;
                    moved = true;
                    break;
                }
            if (!moved) break;
            ++before;
        }
        // one c, then consecutive b's
        int after = -1;
        for (auto& [a, nxt] : pda_steps(m, c))
            if (!a.tau && a.label == "c") {
                after = 0;
                Config c2 = nxt;
                for (;;) {
                    bool moved = false;
                    for (auto& [b, nxt2] : pda_steps(m, c2))
                        if (!b.tau && b.label == "b") {
                            c2 = nxt2;
                            moved = true;
                            break;
                        }
                    if (!moved) break;
                    ++after;
                }
                break;
            }
        os << "stack " << i << ": b-run " << before << ", after c: b-run "
           << (after < 0 ? std::string("none") : std::to_string(after)) << "\n";
    }
    return os.str();
}

// Out-degrees along the a-chain of the transparent (sequential composition)
// reading: strictly increasing, hence not a pushdown process.
std::string unbounded_branching() {
    Spec s = parse_spec(corpus::difference_seq_spec());
    Lts g = explore_spec(s, Bounds{6, 50000}, SemanticsKind::Plain);
    auto bp = branching_profile(g);
    auto adj = g.out_adjacency();
    std::ostringstream os;
    os << "max out-degree at depth 6: " << bp.max << "\n";
    int cur = g.root;
    for (int d = 0; d <= 5; ++d) {
        os << "spine depth " << d << ": out-degree " << bp.out_degree[std::size_t(cur)]
           << "  (" << g.states[std::size_t(cur)].label << ")\n";
        // follow the a-step to the longest label (the growing word)
        int next = -1;
        std::size_t best = 0;
        for (auto& [a, t] : adj[std::size_t(cur)]) {
            if (a.tau || a.label != "a") continue;
            std::size_t len = g.states[std::size_t(t)].label.size();
            if (len >= best) {
                best = len;
                next = t;
            }
        }
        if (next < 0) break;
        cur = next;
    }
    return os.str();
}

}  // namespace

std::vector<std::string> ids() {
    return {"fig1", "fig2", "fig3-4", "fig7", "fig8", "fig9", "counter-spec", "stack",
            "cointoss", "separate-example", "nospec-evidence", "unbounded-branching"};
}

std::string render(const std::string& id) {
    if (id == "fig1") return fig1();
    if (id == "fig2") return fig2();
    if (id == "fig3-4" || id == "fig3/4") return fig3_4();
    if (id == "fig7") return fig7();
    if (id == "fig8") return fig8();
    if (id == "fig9") return fig9();
    if (id == "counter-spec") return counter_spec_text();
    if (id == "stack") return stack();
    if (id == "cointoss") return cointoss();
    if (id == "separate-example") return separate_example();
    if (id == "nospec-evidence") return nospec_evidence();
    if (id == "unbounded-branching") return unbounded_branching();
    throw Error("unknown repro id: " + id);
}

}  // namespace pdaproc::repro
