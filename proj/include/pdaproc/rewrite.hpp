#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pdaproc/core.hpp"
#include "pdaproc/semantics.hpp"

namespace pdaproc {

// ---------------------------------------------------------------------------
// Axioms and rewrite steps

enum class AxiomId {
    A1, A2, A3, A4, A5, A6, A7, A8, A9, A10, A11, A12, A13,
    NA1, NA2, NA3, NA4,
    C1, C2, C3, C4, C5, C6, C7, C8,
    SI1, SI2, SI3, SI4, SI5, SI6, SI7, SI8, SI9,
    R,
};

struct AxiomInfo {
    AxiomId id;
    const char* name;
    const char* lhs;
    const char* rhs;
    const char* side;   // side condition, empty if none
    bool seq_only;      // valid only with sequential composition
    bool seqc_only;     // valid only with sequencing
    bool needs_props;   // mentions propositions
};

const std::vector<AxiomInfo>& axiom_table();
const AxiomInfo& axiom_info(AxiomId id);

// One derivation step: an axiom instance applied at a position (possibly
// right-to-left), an equation unfolding, or the sequencing head expansion
// (see apply_step). Parameters record whatever the replacement side cannot
// reconstruct from the redex alone.
struct RewriteStep {
    enum class Kind { Axiom, Unfold, SeqHead };
    Kind kind = Kind::Axiom;
    AxiomId axiom = AxiomId::A1;
    bool reversed = false;
    std::vector<int> path;       // child indices from the root (a=0, b=1)
    std::vector<Prop> props;
    std::vector<ExprP> terms;
    std::string ident;

    std::string describe(const std::vector<std::string>& vars) const;
};

class RewriteError : public Error {
public:
    using Error::Error;
};

// Applies one step to the term, validating that the redex matches.
ExprP apply_step(Semantics& sem, const ExprP& term, const RewriteStep& step);
// Replays a whole derivation.
ExprP replay(Semantics& sem, const ExprP& term, const std::vector<RewriteStep>& steps);

// ---------------------------------------------------------------------------
// Head normal forms

struct HnfSummand {
    Prop guard;
    Action act;
    ExprP tail;
};

// Denotes  sum_i guard_i -> act_i . tail_i  +  psi ^^ (chi -> 1).
// In the signal-free fragment every guard is true, psi is true and chi is
// constant (the optional accepting summand).
struct Hnf {
    std::vector<HnfSummand> summands;
    Prop psi, chi;
    ExprP input;                      // the expression the derivation started from
    ExprP term;                       // canonical head-normal-form term
    std::vector<RewriteStep> trace;   // derivation input -> term

    std::string format(const std::vector<std::string>& vars) const;
};

// Canonical term for a head normal form in the given spec's mode.
ExprP hnf_term(const Spec& spec, const std::vector<HnfSummand>& summands, const Prop& psi,
               const Prop& chi);
// Recognizes canonical head-normal-form terms.
std::optional<Hnf> parse_hnf_term(const Spec& spec, const ExprP& term);

Hnf hnf(Semantics& sem, const ExprP& expr);

// Removes summands no valuation can realize and normalizes guards and the
// acceptance condition relative to the root signal. Requires a satisfiable
// root signal and the reset effect.
Hnf reduce_hnf(Semantics& sem, const Hnf& h);

// ---------------------------------------------------------------------------
// Depth and the recursion-free decision procedure

struct DepthResult {
    bool finite = true;
    long value = 0;  // meaningful when finite
};

DepthResult depth(Semantics& sem, const ExprP& expr, long state_budget = 100000);

struct RfVerdict {
    bool equal = false;
    std::vector<std::string> context;  // distinguishing context, outermost first
    std::string format() const;
};

// Decides stateless bisimilarity of recursion-free expressions by reduction
// to reduced head normal forms; identifiers are not allowed in the inputs.
RfVerdict decide_bisim_rf(Semantics& sem, const ExprP& p, const ExprP& q);

}  // namespace pdaproc
