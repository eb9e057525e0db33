#pragma once

#include <set>
#include <string>
#include <vector>

#include "pdaproc/core.hpp"
#include "pdaproc/semantics.hpp"

namespace pdaproc {

// Identifier classification: accepting / non-accepting, and the greatest set
// of non-accepting identifiers whose definitions mention only such
// identifiers. Acceptance is the plain one for signal-free specs and the
// valuation-collapsed one when the spec declares variables.
struct IdentClass {
    std::set<std::string> accepting;
    std::set<std::string> nonaccepting;
    std::set<std::string> hereditary;
};

IdentClass classify(const Spec& spec);

// One Greibach-normal-form equation: summands of guarded action prefixes
// over identifier words plus the root signal and acceptance condition.
struct GnfSummand {
    Prop guard;
    Action act;
    std::vector<std::string> word;
};

struct GnfEq {
    std::vector<GnfSummand> summands;
    Prop psi, chi;
};

// Reads an equation already in (signal-)GNF shape, if it is one.
std::optional<GnfEq> read_gnf(const Spec& spec, const ExprP& rhs);

// word in hereditary* nonaccepting accepting* or accepting*.
bool is_acceptance_irredundant(const std::vector<std::string>& word, const IdentClass& cls);
// word in (hereditary - sep)* sep accepting* or accepting*.
bool is_separated(const std::vector<std::string>& word, const std::set<std::string>& sep,
                  const IdentClass& cls);

struct TransformOptions {
    bool validate = true;  // check the result against the input (bounded bisimilarity)
    int validate_k = 8;
    Bounds validate_bounds{8, 20000};
};

// Greibach normal form. Equations already in shape are kept verbatim; the
// rest are rebuilt from reduced head normal forms, introducing fresh
// identifiers for non-identifier sequencing factors.
Spec to_gnf(const Spec& spec, const TransformOptions& opt = {});

// Acceptance Irredundant GNF: after GNF, identifiers defined as exactly 1
// are inlined (and words are cut at identifiers defined as exactly 0), then
// accepting identifiers occurring before a non-accepting position are
// replaced by acceptance-stripped variants. Every run is validated against
// the input; a failed validation is a hard error.
Spec to_aignf(const Spec& spec, const TransformOptions& opt = {});

struct SeparationResult {
    Spec spec;
    std::set<std::string> p_sep;
};

// Separation of non-acceptance from acceptance: rewrites words so that the
// transition from non-accepting to accepting identifiers always happens at
// an identifier from the returned set. Input must be in AIGNF.
SeparationResult separate(const Spec& spec, const TransformOptions& opt = {});

}  // namespace pdaproc
