// pdaproc: workbench for sequential recursive specifications and pushdown
// automata: exploration, normal forms, conversions, and equivalence checks.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pdaproc/bisim.hpp"
#include "pdaproc/convert.hpp"
#include "pdaproc/gen.hpp"
#include "pdaproc/normal.hpp"
#include "pdaproc/parser.hpp"
#include "pdaproc/repro.hpp"
#include "pdaproc/rewrite.hpp"
#include "pdaproc/semantics.hpp"

using namespace pdaproc;

namespace {

constexpr int kOk = 0;
constexpr int kDistinguished = 1;
constexpr int kUsage = 2;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error("cannot write " + out_path);
    out << text;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct Input {
    std::optional<Spec> spec;
    std::optional<Pda> pda;
};

Input load(const std::string& path) {
    std::string text = slurp(path);
    Input in;
    if (ends_with(path, ".pda"))
        in.pda = parse_pda(text);
    else
        in.spec = parse_spec(text);
    return in;
}

Lts explore_input(const Input& in, Bounds bounds) {
    if (in.pda) return explore_pda(*in.pda, bounds);
    SemanticsKind kind =
        in.spec->vars.empty() ? SemanticsKind::Plain : SemanticsKind::Derived;
    return explore_spec(*in.spec, bounds, kind);
}

std::string format_lts(const Lts& g, const std::string& format) {
    if (format == "aut") return write_aut(g);
    if (format == "dot") return write_dot(g);
    if (format == "text") return write_text(g);
    throw Error("unknown format: " + format);
}

std::string golden_dir_default() {
#ifdef PDAPROC_SOURCE_DIR
    return std::string(PDAPROC_SOURCE_DIR) + "/repro/golden";
#else
    return "repro/golden";
#endif
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"process-theoretic workbench for pushdown automata and sequential "
                 "recursive specifications"};
    app.require_subcommand(1);

    int depth = 12;
    long max_states = 50000;
    std::string format = "aut";
    std::string out_path;
    unsigned long seed = 1;
    app.add_option("--depth", depth, "exploration depth")->capture_default_str();
    app.add_option("--max-states", max_states, "state budget")->capture_default_str();
    app.add_option("--format", format, "aut|dot|text")->capture_default_str();
    app.add_option("--out", out_path, "write output to a file");
    app.add_option("--seed", seed, "seed for randomized suites")->capture_default_str();

    // check-guarded
    std::string cg_file;
    auto* cg = app.add_subcommand("check-guarded", "reject unguarded recursion");
    cg->add_option("file", cg_file)->required();

    // lts
    std::string lts_file, lts_sem = "auto";
    auto* lts_cmd = app.add_subcommand("lts", "explore a process graph");
    lts_cmd->add_option("file", lts_file)->required();
    lts_cmd->add_option("--semantics", lts_sem, "auto|plain|derived");

    // gnf / aignf / separate
    std::string nf_file;
    bool no_validate = false;
    auto* gnf_cmd = app.add_subcommand("gnf", "Greibach normal form");
    gnf_cmd->add_option("file", nf_file)->required();
    gnf_cmd->add_flag("--no-validate", no_validate);
    auto* aignf_cmd = app.add_subcommand("aignf", "acceptance irredundant GNF");
    aignf_cmd->add_option("file", nf_file)->required();
    aignf_cmd->add_flag("--no-validate", no_validate);
    auto* sep_cmd = app.add_subcommand("separate", "separate non-acceptance from acceptance");
    sep_cmd->add_option("file", nf_file)->required();
    sep_cmd->add_flag("--no-validate", no_validate);

    // hnf
    std::string hnf_file, hnf_expr;
    bool hnf_reduce = false, hnf_trace = false;
    auto* hnf_cmd = app.add_subcommand("hnf", "head normal form of an expression");
    hnf_cmd->add_option("file", hnf_file)->required();
    hnf_cmd->add_option("--expr", hnf_expr, "expression (default: the init identifier)");
    hnf_cmd->add_flag("--reduce", hnf_reduce, "also reduce the head normal form");
    hnf_cmd->add_flag("--trace", hnf_trace, "print the derivation trace");

    // convert
    auto* conv = app.add_subcommand("convert", "correspondence constructions");
    conv->require_subcommand(1);
    std::string conv_file;
    auto* c_one = conv->add_subcommand("onestate", "one-state PDA -> specification");
    c_one->add_option("file", conv_file)->required();
    auto* c_pda = conv->add_subcommand("to-pda", "specification -> two-state PDA");
    c_pda->add_option("file", conv_file)->required();
    auto* c_sig = conv->add_subcommand("to-signal-spec", "PDA -> specification with signals");
    c_sig->add_option("file", conv_file)->required();
    auto* c_s2p = conv->add_subcommand("signal-to-pda", "signal specification -> PDA");
    c_s2p->add_option("file", conv_file)->required();

    // bisim
    auto* bis = app.add_subcommand("bisim", "equivalence checking");
    bis->require_subcommand(1);
    std::string bis_a, bis_b, bis_left, bis_right, witness_out, witness_in;
    int bis_k = -1;
    auto* b_k = bis->add_subcommand("k", "k-bounded bisimilarity of two graphs");
    b_k->add_option("left", bis_a)->required();
    b_k->add_option("right", bis_b)->required();
    b_k->add_option("--k", bis_k, "approximation bound (default: depth)");
    b_k->add_option("--witness-out", witness_out, "write a JSON witness");
    auto* b_s = bis->add_subcommand("stateless", "stateless bisimilarity of two expressions");
    b_s->add_option("file", bis_a, "context specification")->required();
    b_s->add_option("--left", bis_left)->required();
    b_s->add_option("--right", bis_right)->required();
    auto* b_m = bis->add_subcommand("minimize", "coarsest bisimulation quotient");
    b_m->add_option("file", bis_a)->required();
    auto* b_r = bis->add_subcommand("replay", "validate a distinguishing witness");
    b_r->add_option("witness", witness_in)->required();
    b_r->add_option("left", bis_a)->required();
    b_r->add_option("right", bis_b)->required();

    // axioms
    auto* axs = app.add_subcommand("axioms", "equational axioms");
    axs->require_subcommand(1);
    axs->add_subcommand("list", "print the axiom tables");
    std::string ax_mode = "seqc";
    int ax_count = 200;
    auto* ax_sound = axs->add_subcommand("soundness", "random instantiation suite");
    ax_sound->add_option("--mode", ax_mode, "seq|seqc")->capture_default_str();
    ax_sound->add_option("--count", ax_count, "instantiations per axiom")->capture_default_str();

    // repro
    std::string repro_id, golden_dir = golden_dir_default();
    bool regen = false;
    auto* rp = app.add_subcommand("repro", "reproduce the worked examples");
    rp->add_option("id", repro_id, "example id or 'all'")->required();
    rp->add_flag("--regen", regen, "regenerate the golden files");
    rp->add_option("--golden-dir", golden_dir)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        Bounds bounds{depth, max_states};

        if (*cg) {
            Spec s = parse_spec(slurp(cg_file));
            if (auto w = check_guarded(s)) {
                std::cout << w->format() << "\n";
                return kDistinguished;
            }
            std::cout << "guarded\n";
            return kOk;
        }

        if (*lts_cmd) {
            Input in = load(lts_file);
            Lts g;
            if (lts_sem == "auto") {
                g = explore_input(in, bounds);
            } else if (in.pda) {
                g = explore_pda(*in.pda, bounds);
            } else {
                g = explore_spec(*in.spec, bounds,
                                 lts_sem == "plain" ? SemanticsKind::Plain
                                                    : SemanticsKind::Derived);
            }
            emit(format_lts(g, format), out_path);
            return kOk;
        }

        TransformOptions topt;
        topt.validate = !no_validate;
        if (*gnf_cmd) {
            emit(print_spec(to_gnf(parse_spec(slurp(nf_file)), topt)), out_path);
            return kOk;
        }
        if (*aignf_cmd) {
            emit(print_spec(to_aignf(parse_spec(slurp(nf_file)), topt)), out_path);
            return kOk;
        }
        if (*sep_cmd) {
            auto res = separate(to_aignf(parse_spec(slurp(nf_file)), topt), topt);
            std::ostringstream os;
            os << print_spec(res.spec) << "separating identifiers:";
            for (const auto& x : res.p_sep) os << " " << x;
            os << "\n";
            emit(os.str(), out_path);
            return kOk;
        }

        if (*hnf_cmd) {
            Spec s = parse_spec(slurp(hnf_file));
            ExprP e = hnf_expr.empty() ? ident(s.init) : parse_expr(hnf_expr, s);
            Semantics sem(s);
            Hnf h = hnf(sem, e);
            std::ostringstream os;
            if (hnf_reduce && h.psi.satisfiable()) {
                Hnf r = reduce_hnf(sem, h);
                os << r.format(s.vars);
                os << "term: " << print_expr(r.term, s.vars) << "\n";
                if (hnf_trace) {
                    for (const auto& st : h.trace) os << "  " << st.describe(s.vars) << "\n";
                    for (const auto& st : r.trace) os << "  " << st.describe(s.vars) << "\n";
                }
            } else {
                os << h.format(s.vars);
                os << "term: " << print_expr(h.term, s.vars) << "\n";
                if (hnf_trace)
                    for (const auto& st : h.trace) os << "  " << st.describe(s.vars) << "\n";
            }
            emit(os.str(), out_path);
            return kOk;
        }

        if (*c_one) {
            emit(print_spec(onestate_pda_to_spec(parse_pda(slurp(conv_file)))), out_path);
            return kOk;
        }
        if (*c_pda) {
            auto res = spec_to_pda(parse_spec(slurp(conv_file)));
            emit(print_pda(res.pda), out_path);
            return kOk;
        }
        if (*c_sig) {
            emit(print_spec(pda_to_signal_spec(parse_pda(slurp(conv_file)))), out_path);
            return kOk;
        }
        if (*c_s2p) {
            auto res = signal_spec_to_pda(parse_spec(slurp(conv_file)));
            emit(print_pda(res.pda), out_path);
            return kOk;
        }

        if (*b_k) {
            Lts l = explore_input(load(bis_a), bounds);
            Lts r = explore_input(load(bis_b), bounds);
            int k = bis_k < 0 ? depth : bis_k;
            auto v = k_bisimilar(l, r, k);
            if (v.equivalent) {
                std::cout << "equivalent (k=" << k << ")\n";
                return kOk;
            }
            std::cout << "distinguished (k=" << k << "):\n" << v.witness->format(l, r);
            if (!witness_out.empty()) emit(v.witness->to_json(2) + "\n", witness_out);
            return kDistinguished;
        }
        if (*b_s) {
            Spec s = parse_spec(slurp(bis_a));
            auto v = stateless_bisimilar(s, parse_expr(bis_left, s), parse_expr(bis_right, s));
            if (v.bisimilar) {
                std::cout << "stateless bisimilar\n";
                return kOk;
            }
            std::cout << "not stateless bisimilar:\n" << v.detail;
            return kDistinguished;
        }
        if (*b_m) {
            Lts g = explore_input(load(bis_a), bounds);
            auto res = partition_refine(g);
            emit(format_lts(res.quotient, format), out_path);
            return kOk;
        }
        if (*b_r) {
            auto w = witness_from_json(slurp(witness_in));
            if (!w) throw Error("cannot parse witness file");
            Lts l = explore_input(load(bis_a), bounds);
            Lts r = explore_input(load(bis_b), bounds);
            bool ok = replay_witness(l, r, *w);
            std::cout << (ok ? "witness replays\n" : "witness does not replay\n");
            return ok ? kOk : kDistinguished;
        }

        if (axs->get_subcommand("list")->parsed()) {
            for (const auto& a : axiom_table()) {
                std::cout << a.name << ": " << a.lhs << "  =  " << a.rhs;
                if (a.side[0]) std::cout << "   [" << a.side << "]";
                if (a.seq_only) std::cout << "   (sequential composition only)";
                if (a.seqc_only) std::cout << "   (sequencing only)";
                std::cout << "\n";
            }
            return kOk;
        }
        if (ax_sound->parsed()) {
            Mode m = ax_mode == "seq" ? Mode::Seq : Mode::Seqc;
            auto rows = gen::axiom_soundness(m, seed, ax_count);
            bool unexpected = false;
            for (const auto& row : rows) {
                const auto& info = axiom_info(row.id);
                std::cout << info.name << ": " << row.passed << "/" << (row.passed + row.failed)
                          << " sound";
                if (row.failed) {
                    std::cout << "  first failure: " << row.first_failure;
                    if (!(row.id == AxiomId::A4 && m == Mode::Seqc)) unexpected = true;
                }
                std::cout << "\n";
            }
            return unexpected ? kDistinguished : kOk;
        }

        if (*rp) {
            std::vector<std::string> targets =
                repro_id == "all" ? repro::ids() : std::vector<std::string>{repro_id};
            bool all_match = true;
            for (const auto& id : targets) {
                std::string text = repro::render(id);
                std::filesystem::path golden =
                    std::filesystem::path(golden_dir) / (id + ".txt");
                if (regen) {
                    std::filesystem::create_directories(golden.parent_path());
                    std::ofstream out(golden, std::ios::binary);
                    out << text;
                    std::cout << id << ": regenerated\n";
                    continue;
                }
                std::ifstream in(golden, std::ios::binary);
                if (!in) {
                    std::cout << id << ": golden file missing (" << golden.string() << ")\n";
                    all_match = false;
                    continue;
                }
                std::ostringstream os;
                os << in.rdbuf();
                if (os.str() == text) {
                    std::cout << text;
                    std::cout << id << ": matches golden\n";
                } else {
                    std::cout << id << ": MISMATCH against " << golden.string() << "\n";
                    all_match = false;
                }
            }
            return all_match ? kOk : kUsage;
        }
    } catch (const GuardednessError& e) {
        std::cerr << e.what() << "\n";
        return kDistinguished;
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
