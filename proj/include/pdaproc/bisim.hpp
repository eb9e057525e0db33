#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pdaproc/core.hpp"
#include "pdaproc/lts.hpp"
#include "pdaproc/semantics.hpp"

namespace pdaproc {

// Distinguishing evidence: a move tree. A leaf records an acceptance (or
// frontier) mismatch; an inner node records a move one side makes that the
// listed responses of the other side all fail to match.
struct BisimWitness {
    enum class Kind { AcceptMismatch, FrontierMismatch, Move };
    Kind kind = Kind::AcceptMismatch;
    int left_state = 0, right_state = 0;
    int moving_side = 0;  // 0 = left moves, 1 = right moves (Kind::Move)
    Action act;
    int move_target = 0;
    std::vector<std::pair<int, BisimWitness>> responses;  // responder target -> refutation

    std::string format(const Lts& l, const Lts& r, int indent = 0) const;
    std::string to_json(int indent = 0) const;
};

std::optional<BisimWitness> witness_from_json(const std::string& text);

struct KBisimVerdict {
    bool equivalent = false;
    int k = 0;
    std::optional<BisimWitness> witness;
};

// k-round bisimilarity approximation on two explored graphs. Frontier states
// relate only to frontier states with equal acceptance, so a `distinguished`
// verdict is sound unconditionally and `equivalent` means equivalence of the
// k-th approximants. Both graphs must be explored to depth >= k.
KBisimVerdict k_bisimilar(const Lts& l, const Lts& r, int k);

// Validates a witness against the two graphs.
bool replay_witness(const Lts& l, const Lts& r, const BisimWitness& w);

struct MinimizeResult {
    Lts quotient;
    std::vector<int> block_of;  // original state -> quotient state
};

// Coarsest strong-bisimulation quotient of a fully explored graph.
MinimizeResult partition_refine(const Lts& g);

// ---------------------------------------------------------------------------
// Stateless bisimilarity

struct StatelessVerdict {
    bool bisimilar = false;
    std::string detail;  // human-readable refutation, empty when bisimilar
};

// Decides stateless bisimilarity of recursion-free expressions exactly, by
// partition refinement over the joint (term, valuation)-indexed graph.
StatelessVerdict stateless_bisimilar(const Spec& spec, const ExprP& p, const ExprP& q,
                                     Effect effect = reset_effect(), long max_states = 200000);

// Bounded variant for expressions with recursion: sound for distinguishing,
// k-approximate for equating.
StatelessVerdict stateless_k_bisimilar(const Spec& spec, const ExprP& p, const ExprP& q, int k,
                                       Bounds bounds = {}, Effect effect = reset_effect());

// ---------------------------------------------------------------------------
// Branching profile

struct BranchingProfile {
    std::vector<int> out_degree;     // per state
    std::vector<bool> lower_bound;   // true for frontier states
    int max = 0;
};

BranchingProfile branching_profile(const Lts& g);

}  // namespace pdaproc
