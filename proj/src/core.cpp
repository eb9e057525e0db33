#include "pdaproc/core.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace pdaproc {

const std::string& Action::name() const {
    static const std::string kTau = "tau";
    return tau ? kTau : label;
}

// ---------------------------------------------------------------------------
// Prop

namespace {
std::size_t words_for(int nvars) {
    std::uint64_t rows = std::uint64_t(1) << nvars;
    return std::size_t((rows + 63) / 64);
}
std::uint64_t tail_mask(int nvars) {
    std::uint64_t rows = std::uint64_t(1) << nvars;
    std::uint64_t rem = rows & 63;
    return rem == 0 ? ~std::uint64_t(0) : ((std::uint64_t(1) << rem) - 1);
}
}  // namespace

Prop Prop::constant(int nvars, bool value) {
    if (nvars < 0 || nvars > 16) throw Error("proposition variable count out of range");
    Prop p;
    p.nvars_ = nvars;
    p.bits_.assign(words_for(nvars), value ? ~std::uint64_t(0) : 0);
    if (value) p.bits_.back() &= tail_mask(nvars);
    return p;
}

Prop Prop::variable(int nvars, int index) {
    if (index < 0 || index >= nvars) throw Error("proposition variable index out of range");
    Prop p = constant(nvars, false);
    for (std::uint64_t r = 0; r < p.rows(); ++r)
        if ((r >> index) & 1) p.bits_[r >> 6] |= std::uint64_t(1) << (r & 63);
    return p;
}

void Prop::check_same(const Prop& o) const {
    if (nvars_ != o.nvars_) throw Error("propositions over different variable lists");
}

bool Prop::eval(const Valuation& v) const {
    if (v.nvars() != nvars_) throw Error("valuation over a different variable list");
    return row(v.row());
}

bool Prop::is_false() const {
    for (auto w : bits_)
        if (w) return false;
    return true;
}

bool Prop::is_true() const {
    for (std::size_t i = 0; i + 1 < bits_.size(); ++i)
        if (~bits_[i]) return false;
    return bits_.back() == tail_mask(nvars_);
}

Prop Prop::operator&(const Prop& o) const {
    check_same(o);
    Prop r = *this;
    for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] &= o.bits_[i];
    return r;
}

Prop Prop::operator|(const Prop& o) const {
    check_same(o);
    Prop r = *this;
    for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] |= o.bits_[i];
    return r;
}

Prop Prop::operator!() const {
    Prop r = *this;
    for (auto& w : r.bits_) w = ~w;
    r.bits_.back() &= tail_mask(nvars_);
    return r;
}

std::optional<std::uint64_t> Prop::witness() const {
    for (std::uint64_t r = 0; r < rows(); ++r)
        if (row(r)) return r;
    return std::nullopt;
}

std::string Valuation::format(const std::vector<std::string>& vars) const {
    std::ostringstream os;
    os << "{";
    for (int i = 0; i < nvars_; ++i) {
        if (i) os << ", ";
        os << vars[std::size_t(i)] << "=" << (value(i) ? "true" : "false");
    }
    os << "}";
    return os.str();
}

std::string Prop::format(const std::vector<std::string>& vars) const {
    if (is_false()) return "false";
    if (is_true()) return "true";
    // Try a single literal or a conjunction of literals before giving up
    // and printing the full disjunctive normal form.
    auto literal_conj = [&](std::uint64_t fixed, std::uint64_t value) {
        std::ostringstream os;
        bool first = true;
        for (int i = 0; i < nvars_; ++i) {
            if (!((fixed >> i) & 1)) continue;
            if (!first) os << " & ";
            first = false;
            if (!((value >> i) & 1)) os << "!";
            os << vars[std::size_t(i)];
        }
        return os.str();
    };
    // A cube: satisfying rows are exactly those agreeing with `value` on `fixed`.
    for (std::uint64_t fixed = 1; fixed < rows(); ++fixed) {
        std::optional<std::uint64_t> val;
        bool cube = true;
        for (std::uint64_t r = 0; r < rows() && cube; ++r) {
            if (!row(r)) continue;
            if (!val)
                val = r & fixed;
            else if ((r & fixed) != *val)
                cube = false;
        }
        if (!cube || !val) continue;
        std::uint64_t expect = 0;
        for (std::uint64_t r = 0; r < rows(); ++r)
            if ((r & fixed) == *val) ++expect;
        std::uint64_t have = 0;
        for (std::uint64_t r = 0; r < rows(); ++r)
            if (row(r)) ++have;
        if (have == expect) return literal_conj(fixed, *val);
    }
    std::ostringstream os;
    bool first = true;
    std::uint64_t all = (std::uint64_t(1) << nvars_) - 1;
    for (std::uint64_t r = 0; r < rows(); ++r) {
        if (!row(r)) continue;
        if (!first) os << " | ";
        first = false;
        os << literal_conj(all, r);
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Expressions

namespace {

std::size_t mix(std::size_t a, std::size_t b) {
    return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}

std::size_t hash_prop(const Prop& p) {
    std::size_t h = std::size_t(p.nvars());
    for (std::uint64_t r = 0; r < p.rows(); r += 64) {
        std::uint64_t w = 0;
        for (int i = 0; i < 64 && r + std::uint64_t(i) < p.rows(); ++i)
            w |= std::uint64_t(p.row(r + std::uint64_t(i))) << i;
        h = mix(h, std::size_t(w));
    }
    return h;
}

ExprP make(Expr e) {
    std::size_t h = std::size_t(e.kind) * 0x9e3779b1;
    switch (e.kind) {
        case ExprKind::Prefix:
            h = mix(h, std::hash<std::string>{}(e.act.name()));
            h = mix(h, e.a->hash);
            break;
        case ExprKind::Choice:
        case ExprKind::Seq:
        case ExprKind::SeqLegacy:
            h = mix(h, e.a->hash);
            h = mix(h, e.b->hash);
            break;
        case ExprKind::Na:
            h = mix(h, e.a->hash);
            break;
        case ExprKind::Guard:
        case ExprKind::Signal:
            h = mix(h, hash_prop(e.prop));
            h = mix(h, e.a->hash);
            break;
        case ExprKind::Ident:
            h = mix(h, std::hash<std::string>{}(e.ident));
            break;
        default:
            break;
    }
    e.hash = h;
    return std::make_shared<const Expr>(std::move(e));
}

}  // namespace

ExprP deadlock() {
    static const ExprP e = make(Expr{ExprKind::Deadlock});
    return e;
}
ExprP accept() {
    static const ExprP e = make(Expr{ExprKind::Accept});
    return e;
}
ExprP prefix(Action a, ExprP p) {
    Expr e{ExprKind::Prefix};
    e.act = std::move(a);
    e.a = std::move(p);
    return make(std::move(e));
}
ExprP choice(ExprP l, ExprP r) {
    Expr e{ExprKind::Choice};
    e.a = std::move(l);
    e.b = std::move(r);
    return make(std::move(e));
}
ExprP seq(ExprP l, ExprP r) {
    Expr e{ExprKind::Seq};
    e.a = std::move(l);
    e.b = std::move(r);
    return make(std::move(e));
}
ExprP seq_legacy(ExprP l, ExprP r) {
    Expr e{ExprKind::SeqLegacy};
    e.a = std::move(l);
    e.b = std::move(r);
    return make(std::move(e));
}
ExprP na(ExprP p) {
    Expr e{ExprKind::Na};
    e.a = std::move(p);
    return make(std::move(e));
}
ExprP guard(Prop phi, ExprP p) {
    Expr e{ExprKind::Guard};
    e.prop = std::move(phi);
    e.a = std::move(p);
    return make(std::move(e));
}
ExprP signal(Prop phi, ExprP p) {
    Expr e{ExprKind::Signal};
    e.prop = std::move(phi);
    e.a = std::move(p);
    return make(std::move(e));
}
ExprP ident(std::string name) {
    Expr e{ExprKind::Ident};
    e.ident = std::move(name);
    return make(std::move(e));
}

int expr_cmp(const ExprP& x, const ExprP& y) {
    if (x.get() == y.get()) return 0;
    if (x->kind != y->kind) return x->kind < y->kind ? -1 : 1;
    if (x->hash != y->hash) return x->hash < y->hash ? -1 : 1;
    switch (x->kind) {
        case ExprKind::Deadlock:
        case ExprKind::Accept:
            return 0;
        case ExprKind::Ident:
            return x->ident.compare(y->ident) < 0 ? -1 : (x->ident == y->ident ? 0 : 1);
        case ExprKind::Prefix: {
            if (x->act != y->act) return x->act < y->act ? -1 : 1;
            return expr_cmp(x->a, y->a);
        }
        case ExprKind::Na:
            return expr_cmp(x->a, y->a);
        case ExprKind::Guard:
        case ExprKind::Signal: {
            if (x->prop != y->prop) return x->prop < y->prop ? -1 : 1;
            return expr_cmp(x->a, y->a);
        }
        case ExprKind::Choice:
        case ExprKind::Seq:
        case ExprKind::SeqLegacy: {
            int c = expr_cmp(x->a, y->a);
            if (c) return c;
            return expr_cmp(x->b, y->b);
        }
    }
    return 0;
}

bool expr_equal(const ExprP& x, const ExprP& y) { return expr_cmp(x, y) == 0; }

std::set<std::string> free_idents(const ExprP& e) {
    std::set<std::string> out;
    std::function<void(const ExprP&)> go = [&](const ExprP& p) {
        if (!p) return;
        if (p->kind == ExprKind::Ident) out.insert(p->ident);
        go(p->a);
        go(p->b);
    };
    go(e);
    return out;
}

ExprP big_choice(const std::vector<ExprP>& exprs) {
    if (exprs.empty()) return deadlock();
    ExprP acc = exprs[0];
    for (std::size_t i = 1; i < exprs.size(); ++i) acc = choice(acc, exprs[i]);
    return acc;
}

std::vector<ExprP> flatten_choice(const ExprP& e) {
    std::vector<ExprP> out;
    std::function<void(const ExprP&)> go = [&](const ExprP& p) {
        if (p->kind == ExprKind::Choice) {
            go(p->a);
            go(p->b);
        } else {
            out.push_back(p);
        }
    };
    go(e);
    return out;
}

ExprP seq_word(const std::vector<std::string>& word, Mode mode) {
    if (word.empty()) return accept();
    ExprP acc = ident(word[0]);
    for (std::size_t i = 1; i < word.size(); ++i) {
        ExprP next = ident(word[i]);
        acc = mode == Mode::Seqc ? seq(acc, next) : seq_legacy(acc, next);
    }
    return acc;
}

std::vector<ExprP> flatten_seq(const ExprP& e, Mode mode) {
    ExprKind op = mode == Mode::Seqc ? ExprKind::Seq : ExprKind::SeqLegacy;
    std::vector<ExprP> out;
    std::function<void(const ExprP&)> go = [&](const ExprP& p) {
        if (p->kind == op) {
            go(p->a);
            go(p->b);
        } else if (p->kind != ExprKind::Accept) {
            out.push_back(p);
        }
    };
    go(e);
    return out;
}

std::optional<std::vector<std::string>> as_word(const ExprP& e, Mode mode) {
    std::vector<std::string> word;
    for (const auto& f : flatten_seq(e, mode)) {
        if (f->kind != ExprKind::Ident) return std::nullopt;
        word.push_back(f->ident);
    }
    return word;
}

// ---------------------------------------------------------------------------
// Spec

bool Spec::has(const std::string& id) const {
    for (const auto& [n, _] : equations)
        if (n == id) return true;
    return false;
}

const ExprP& Spec::defn(const std::string& id) const {
    for (const auto& [n, e] : equations)
        if (n == id) return e;
    throw Error("undefined identifier: " + id);
}

void Spec::add(const std::string& id, ExprP rhs) {
    if (has(id)) throw Error("duplicate identifier: " + id);
    equations.emplace_back(id, std::move(rhs));
}

void Spec::replace(const std::string& id, ExprP rhs) {
    for (auto& [n, e] : equations)
        if (n == id) {
            e = std::move(rhs);
            return;
        }
    throw Error("undefined identifier: " + id);
}

int Spec::var_index(const std::string& v) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == v) return int(i);
    throw Error("unknown propositional variable: " + v);
}

std::vector<std::string> Spec::alphabet() const {
    if (declared_alphabet) return *declared_alphabet;
    std::set<std::string> labels;
    std::function<void(const ExprP&)> go = [&](const ExprP& p) {
        if (!p) return;
        if (p->kind == ExprKind::Prefix && !p->act.tau) labels.insert(p->act.label);
        go(p->a);
        go(p->b);
    };
    for (const auto& [_, e] : equations) go(e);
    return {labels.begin(), labels.end()};
}

void Spec::validate() const {
    if (!has(init)) throw Error("init identifier '" + init + "' is not defined");
    for (const auto& [id, rhs] : equations) {
        for (const auto& x : free_idents(rhs))
            if (!has(x)) throw Error("undefined identifier '" + x + "' in equation for " + id);
        std::function<void(const ExprP&)> go = [&](const ExprP& p) {
            if (!p) return;
            if (p->kind == ExprKind::SeqLegacy && mode == Mode::Seqc)
                throw Error("sequential composition used in seqc mode (equation for " + id + ")");
            if (p->kind == ExprKind::Seq && mode == Mode::Seq)
                throw Error("sequencing used in seq mode (equation for " + id + ")");
            if ((p->kind == ExprKind::Guard || p->kind == ExprKind::Signal) && vars.empty())
                throw Error("condition or signal without declared variables (equation for " + id + ")");
            go(p->a);
            go(p->b);
        };
        go(rhs);
    }
}

bool Spec::operator==(const Spec& o) const { return spec_equal(*this, o); }

bool spec_equal(const Spec& a, const Spec& b) {
    if (a.name != b.name || a.mode != b.mode || a.vars != b.vars || a.init != b.init) return false;
    if (a.declared_alphabet != b.declared_alphabet) return false;
    if (a.equations.size() != b.equations.size()) return false;
    for (std::size_t i = 0; i < a.equations.size(); ++i) {
        if (a.equations[i].first != b.equations[i].first) return false;
        if (!expr_equal(a.equations[i].second, b.equations[i].second)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Precedence: choice (1) < guard/signal (2) < sequencing (3) < prefix (4).
int precedence(const ExprP& e) {
    switch (e->kind) {
        case ExprKind::Choice: return 1;
        case ExprKind::Guard:
        case ExprKind::Signal: return 2;
        case ExprKind::Seq:
        case ExprKind::SeqLegacy: return 3;
        case ExprKind::Prefix: return 4;
        default: return 5;
    }
}

void print_rec(std::ostringstream& os, const ExprP& e, const std::vector<std::string>& vars,
               int min_prec) {
    int prec = precedence(e);
    bool paren = prec < min_prec;
    if (paren) os << "(";
    switch (e->kind) {
        case ExprKind::Deadlock: os << "0"; break;
        case ExprKind::Accept: os << "1"; break;
        case ExprKind::Ident: os << e->ident; break;
        case ExprKind::Prefix:
            os << e->act.name() << ".";
            print_rec(os, e->a, vars, 5);
            break;
        case ExprKind::Choice:
            print_rec(os, e->a, vars, 1);
            os << " + ";
            print_rec(os, e->b, vars, 2);
            break;
        case ExprKind::Seq:
            print_rec(os, e->a, vars, 3);
            os << ";";
            print_rec(os, e->b, vars, 4);
            break;
        case ExprKind::SeqLegacy:
            print_rec(os, e->a, vars, 3);
            os << " .seq ";
            print_rec(os, e->b, vars, 4);
            break;
        case ExprKind::Na:
            os << "NA(";
            print_rec(os, e->a, vars, 0);
            os << ")";
            break;
        case ExprKind::Guard:
            os << "[" << e->prop.format(vars) << "] -> ";
            print_rec(os, e->a, vars, 2);
            break;
        case ExprKind::Signal:
            os << "[" << e->prop.format(vars) << "]^^ ";
            print_rec(os, e->a, vars, 2);
            break;
    }
    if (paren) os << ")";
}

}  // namespace

std::string print_expr(const ExprP& e, const std::vector<std::string>& vars) {
    std::ostringstream os;
    print_rec(os, e, vars, 0);
    return os.str();
}

std::string print_spec(const Spec& s) {
    std::ostringstream os;
    os << "spec " << s.name << " {\n";
    os << "  mode " << (s.mode == Mode::Seqc ? "seqc" : "seq") << ";\n";
    if (!s.vars.empty()) {
        os << "  vars ";
        for (std::size_t i = 0; i < s.vars.size(); ++i) os << (i ? ", " : "") << s.vars[i];
        os << ";\n";
    }
    if (s.declared_alphabet) {
        os << "  alphabet ";
        for (std::size_t i = 0; i < s.declared_alphabet->size(); ++i)
            os << (i ? ", " : "") << (*s.declared_alphabet)[i];
        os << ";\n";
    }
    os << "  init " << s.init << ";\n";
    for (const auto& [id, rhs] : s.equations)
        os << "  " << id << " = " << print_expr(rhs, s.vars) << "\n";
    os << "}\n";
    return os.str();
}

}  // namespace pdaproc
