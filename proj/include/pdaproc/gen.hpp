#pragma once

#include <random>
#include <string>
#include <vector>

#include "pdaproc/core.hpp"
#include "pdaproc/rewrite.hpp"

// Random generators for property suites and the axiom soundness command.

namespace pdaproc::gen {

using Rng = std::mt19937_64;

struct TermConfig {
    int max_depth = 4;
    bool with_props = false;  // conditions and signals
    bool with_na = true;
    Mode mode = Mode::Seqc;
    std::vector<std::string> actions = {"a", "b", "c"};
};

Prop random_prop(Rng& rng, int nvars);
ExprP random_term(Rng& rng, const Spec& ctx, const TermConfig& cfg);

struct SpecConfig {
    int idents = 3;
    int max_summands = 3;
    int max_word = 2;
    std::vector<std::string> actions = {"a", "b", "c"};
    double accept_prob = 0.5;
};

// Random guarded seqc specification in Greibach normal form.
Spec random_guarded_spec(Rng& rng, const SpecConfig& cfg, const std::string& name);

// Instantiates both sides of an axiom with random closed expressions drawn
// from the fragment the axiom belongs to.
std::pair<ExprP, ExprP> instantiate_axiom(Rng& rng, const Spec& ctx, AxiomId id, Mode mode);

struct SoundnessRow {
    AxiomId id;
    int passed = 0;
    int failed = 0;
    std::string first_failure;  // printed pair, empty if none
};

// Runs `count` random instantiations of every axiom applicable in the mode;
// in seqc mode the distributivity axiom A4 is included as well, where it is
// expected to fail.
std::vector<SoundnessRow> axiom_soundness(Mode mode, unsigned long seed, int count);

}  // namespace pdaproc::gen
