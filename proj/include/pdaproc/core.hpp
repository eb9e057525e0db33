#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

// Core term and proposition representations. Everything here is immutable
// after construction and safe to share across threads.

namespace pdaproc {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// ---------------------------------------------------------------------------
// Actions

struct Action {
    bool tau = false;
    std::string label;  // empty iff tau

    static Action silent() { return Action{true, {}}; }
    static Action named(std::string s) { return Action{false, std::move(s)}; }

    bool operator==(const Action& o) const { return tau == o.tau && label == o.label; }
    bool operator!=(const Action& o) const { return !(*this == o); }
    bool operator<(const Action& o) const {
        if (tau != o.tau) return tau;  // tau sorts first
        return label < o.label;
    }
    const std::string& name() const;
};

// ---------------------------------------------------------------------------
// Propositions as canonical truth tables over an ordered variable list.
//
// A Prop over n variables stores one bit per valuation row (2^n rows).
// Two Props over the same variable list are equal iff their bit sets are
// equal; all connectives are bit operations. The owning Spec fixes the
// variable order, so Props never carry variable names themselves.

class Valuation;

class Prop {
public:
    Prop() : nvars_(0), bits_(1, 0) {}  // false over zero variables

    static Prop constant(int nvars, bool value);
    static Prop variable(int nvars, int index);

    int nvars() const { return nvars_; }
    std::uint64_t rows() const { return std::uint64_t(1) << nvars_; }

    bool eval(const Valuation& v) const;
    bool row(std::uint64_t r) const { return (bits_[r >> 6] >> (r & 63)) & 1; }

    bool is_false() const;
    bool is_true() const;
    bool satisfiable() const { return !is_false(); }
    bool valid() const { return is_true(); }

    Prop operator&(const Prop& o) const;
    Prop operator|(const Prop& o) const;
    Prop operator!() const;
    bool implies(const Prop& o) const { return ((!*this) | o).is_true(); }

    bool operator==(const Prop& o) const { return nvars_ == o.nvars_ && bits_ == o.bits_; }
    bool operator!=(const Prop& o) const { return !(*this == o); }
    bool operator<(const Prop& o) const {
        if (nvars_ != o.nvars_) return nvars_ < o.nvars_;
        return bits_ < o.bits_;
    }

    // First satisfying row, if any.
    std::optional<std::uint64_t> witness() const;

    // Renders the table as a formula over the given variable names.
    std::string format(const std::vector<std::string>& vars) const;

private:
    friend class Valuation;
    void check_same(const Prop& o) const;
    int nvars_;
    std::vector<std::uint64_t> bits_;  // 2^nvars bits, rounded up to words
};

// Total map from the declared propositional variables to booleans, encoded
// as a row index (bit i = value of variable i).
class Valuation {
public:
    Valuation(int nvars, std::uint64_t row) : nvars_(nvars), row_(row) {}
    static Valuation all_true(int nvars) {
        return Valuation(nvars, (std::uint64_t(1) << nvars) - 1);
    }
    int nvars() const { return nvars_; }
    std::uint64_t row() const { return row_; }
    bool value(int var) const { return (row_ >> var) & 1; }
    bool operator==(const Valuation& o) const { return nvars_ == o.nvars_ && row_ == o.row_; }
    bool operator<(const Valuation& o) const { return row_ < o.row_; }
    std::string format(const std::vector<std::string>& vars) const;

private:
    int nvars_;
    std::uint64_t row_;
};

// ---------------------------------------------------------------------------
// Process expressions

enum class ExprKind {
    Deadlock,   // 0
    Accept,     // 1
    Prefix,     // a.p
    Choice,     // p + q
    Seq,        // p ; q   (sequencing)
    SeqLegacy,  // p · q   (sequential composition)
    Na,         // NA(p)
    Guard,      // [phi] -> p
    Signal,     // [phi]^^ p
    Ident,      // X
};

struct Expr;
using ExprP = std::shared_ptr<const Expr>;

struct Expr {
    ExprKind kind;
    Action act;         // Prefix
    Prop prop;          // Guard, Signal
    ExprP a, b;         // children
    std::string ident;  // Ident
    std::size_t hash = 0;
};

ExprP deadlock();
ExprP accept();
ExprP prefix(Action a, ExprP p);
ExprP choice(ExprP l, ExprP r);
ExprP seq(ExprP l, ExprP r);
ExprP seq_legacy(ExprP l, ExprP r);
ExprP na(ExprP p);
ExprP guard(Prop phi, ExprP p);
ExprP signal(Prop phi, ExprP p);
ExprP ident(std::string name);

bool expr_equal(const ExprP& x, const ExprP& y);
int expr_cmp(const ExprP& x, const ExprP& y);

struct ExprLess {
    bool operator()(const ExprP& x, const ExprP& y) const { return expr_cmp(x, y) < 0; }
};

// Identifiers syntactically occurring in an expression.
std::set<std::string> free_idents(const ExprP& e);

// Left-nested sum of the given expressions; the empty sum is deadlock.
ExprP big_choice(const std::vector<ExprP>& exprs);
// Summands of a sum, left to right.
std::vector<ExprP> flatten_choice(const ExprP& e);

enum class Mode { Seq, Seqc };

// Left-nested sequence of identifiers; the empty word is the accepting
// process, and a one-letter word is the identifier itself.
ExprP seq_word(const std::vector<std::string>& word, Mode mode);
// Sequencing factors of an expression, left to right (1 disappears).
std::vector<ExprP> flatten_seq(const ExprP& e, Mode mode);
// Reads an expression as a word of identifiers if it is one.
std::optional<std::vector<std::string>> as_word(const ExprP& e, Mode mode);

// ---------------------------------------------------------------------------
// Recursive specifications

struct Spec {
    std::string name = "spec";
    Mode mode = Mode::Seqc;
    std::vector<std::string> vars;  // declared propositional variables, in order
    std::optional<std::vector<std::string>> declared_alphabet;
    std::vector<std::pair<std::string, ExprP>> equations;
    std::string init;

    bool has(const std::string& id) const;
    const ExprP& defn(const std::string& id) const;
    void add(const std::string& id, ExprP rhs);
    void replace(const std::string& id, ExprP rhs);
    int nvars() const { return int(vars.size()); }
    int var_index(const std::string& v) const;

    // Declared alphabet if present, otherwise the set of labels used.
    std::vector<std::string> alphabet() const;

    // Checks that every identifier is defined, init exists, and the
    // expression invariants for the mode hold. Throws Error on violation.
    void validate() const;

    bool operator==(const Spec& o) const;
};

bool spec_equal(const Spec& a, const Spec& b);

std::string print_expr(const ExprP& e, const std::vector<std::string>& vars);
std::string print_spec(const Spec& s);

}  // namespace pdaproc
