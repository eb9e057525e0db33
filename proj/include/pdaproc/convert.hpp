#pragma once

#include <set>
#include <string>

#include "pdaproc/core.hpp"
#include "pdaproc/normal.hpp"
#include "pdaproc/pda.hpp"

namespace pdaproc {

// Specification constructed from a one-state pushdown automaton: identifier
// X for the empty stack and X_d for each datum d.
Spec onestate_pda_to_spec(const Pda& m);

struct PdaConversion {
    Pda pda;
    Spec transformed;             // the separated AIGNF specification used
    std::set<std::string> p_sep;  // identifiers marking the acceptance switch
};

// Two-state pushdown automaton for a guarded signal-free seqc specification.
PdaConversion spec_to_pda(const Spec& spec, const TransformOptions& opt = {});

// Specification with conditions and signals for an arbitrary pushdown
// automaton: a propositional variable per state, identifiers X, X_eps and
// X_d, and the reset effect.
Spec pda_to_signal_spec(const Pda& m);

// Two-state pushdown automaton for a guarded seqc specification with
// conditions and signals, built over its valuation-collapsed steps.
PdaConversion signal_spec_to_pda(const Spec& spec, const TransformOptions& opt = {});

}  // namespace pdaproc
