#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "pdaproc/core.hpp"
#include "pdaproc/lts.hpp"
#include "pdaproc/pda.hpp"

namespace pdaproc {

// ---------------------------------------------------------------------------
// Guardedness

struct UnguardedWitness {
    // Chain of identifiers along unguarded dependencies; `cyclic` tells
    // whether the last element closes a cycle back to the first.
    std::vector<std::string> chain;
    bool cyclic = true;
    std::string format() const;
};

// ok (nullopt) iff the recursive unfolding needed to evaluate transitions is
// well-founded: an identifier occurrence is harmless when it sits under an
// action prefix, or in the right argument of a sequencing whose left
// argument can never accept. Everything else is an unguarded dependency,
// and those must not form a cycle.
std::optional<UnguardedWitness> check_guarded(const Spec& spec);

class GuardednessError : public Error {
public:
    explicit GuardednessError(UnguardedWitness w)
        : Error("specification is unguarded: " + w.format()), witness(std::move(w)) {}
    UnguardedWitness witness;
};

// ---------------------------------------------------------------------------
// Effect functions

// Valuation transformer applied on each action. The default resets every
// variable to true.
using Effect = std::function<Valuation(const Action&, const Valuation&)>;
Effect reset_effect();

// ---------------------------------------------------------------------------
// Step computation

struct PlainStep {
    Action act;
    ExprP target;
};

struct ValStep {
    Action act;
    ExprP target;
    Valuation target_val;
};

// One evaluation session; memo tables live for the lifetime of the object.
class Semantics {
public:
    explicit Semantics(const Spec& spec, Effect effect = reset_effect());

    const Spec& spec() const { return spec_; }

    // Plain fragment (no conditions or signals).
    std::vector<PlainStep> steps_plain(const ExprP& e);
    bool accepts_plain(const ExprP& e);

    // Valuation-indexed semantics with consistency.
    bool cons(const ExprP& e, const Valuation& v);
    std::vector<ValStep> steps_val(const ExprP& e, const Valuation& v);
    bool accepts_val(const ExprP& e, const Valuation& v);

    // Valuation-collapsed semantics: a step exists iff it exists under
    // every consistent valuation.
    std::vector<PlainStep> steps_derived(const ExprP& e);
    bool accepts_derived(const ExprP& e);
    bool consistent_somewhere(const ExprP& e);

    std::vector<Valuation> all_valuations() const;

private:
    bool accv(const ExprP& e, const Valuation& v);
    std::vector<ValStep> stepsv(const ExprP& e, const Valuation& v);

    const Spec& spec_;
    Effect effect_;
    std::map<ExprP, std::vector<PlainStep>, ExprLess> steps_memo_;
    std::map<ExprP, bool, ExprLess> acc_memo_;
    std::map<std::pair<ExprP, std::uint64_t>, bool,
             std::function<bool(const std::pair<ExprP, std::uint64_t>&,
                                const std::pair<ExprP, std::uint64_t>&)>>
        cons_memo_, accv_memo_;
    std::map<std::pair<ExprP, std::uint64_t>, std::vector<ValStep>,
             std::function<bool(const std::pair<ExprP, std::uint64_t>&,
                                const std::pair<ExprP, std::uint64_t>&)>>
        stepsv_memo_;
};

// ---------------------------------------------------------------------------
// Exploration

struct Bounds {
    int max_depth = 12;
    long max_states = 50000;
};

enum class SemanticsKind { Plain, Derived };

Lts explore_spec(const Spec& spec, Bounds bounds, SemanticsKind kind,
                 Effect effect = reset_effect());
Lts explore_expr(const Spec& spec, const ExprP& root, Bounds bounds, SemanticsKind kind,
                 Effect effect = reset_effect());
Lts explore_pda(const Pda& m, Bounds bounds);

}  // namespace pdaproc
