#include "pdaproc/parser.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace pdaproc {

namespace {

enum class Tok {
    Word,    // identifiers, action names, data symbols, numbers
    LBrace, RBrace, LParen, RParen, LBracket, RBracket,
    Semi, Comma, Plus, Dot, DotSeq, Eq, Arrow,  // ->  (also :->)
    Hat2,    // ^^
    Bang, Amp, Bar,
    Dash2, Arrow2,  // --  and  -->
    Slash,
    Bottom,  // _|_
    End,
};

struct Token {
    Tok kind;
    std::string text;
    SourceSpan span;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : s_(text) { next(); }

    const Token& peek() const { return tok_; }
    const Token& peek2() {
        if (!have2_) {
            saved_ = tok_;
            next();
            tok2_ = tok_;
            tok_ = saved_;
            have2_ = true;
        }
        return tok2_;
    }
    Token take() {
        Token t = tok_;
        if (have2_) {
            tok_ = tok2_;
            have2_ = false;
        } else {
            next();
        }
        return t;
    }

private:
    static bool word_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '#';
    }

    void skip_space() {
        for (;;) {
            while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) advance();
            if (pos_ + 1 < s_.size() && s_[pos_] == '/' && s_[pos_ + 1] == '/') {
                while (pos_ < s_.size() && s_[pos_] != '\n') advance();
                continue;
            }
            if (pos_ + 1 < s_.size() && s_[pos_] == '/' && s_[pos_ + 1] == '*') {
                advance();
                advance();
                while (pos_ + 1 < s_.size() && !(s_[pos_] == '*' && s_[pos_ + 1] == '/')) advance();
                if (pos_ + 1 < s_.size()) {
                    advance();
                    advance();
                }
                continue;
            }
            break;
        }
    }

    void advance() {
        if (pos_ < s_.size()) {
            if (s_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    bool starts(const char* lit) const {
        std::size_t n = std::strlen(lit);
        return s_.compare(pos_, n, lit) == 0;
    }

    void next() {
        skip_space();
        Token t;
        t.span = SourceSpan{line_, col_, pos_, pos_};
        if (pos_ >= s_.size()) {
            t.kind = Tok::End;
            tok_ = t;
            return;
        }
        auto emit = [&](Tok k, std::size_t len) {
            t.kind = k;
            t.text = s_.substr(pos_, len);
            for (std::size_t i = 0; i < len; ++i) advance();
            t.span.end = pos_;
            tok_ = t;
        };
        char c = s_[pos_];
        if (starts("_|_")) return emit(Tok::Bottom, 3);
        if (starts("-->")) return emit(Tok::Arrow2, 3);
        if (starts("--")) return emit(Tok::Dash2, 2);
        if (starts("->")) return emit(Tok::Arrow, 2);
        if (starts(":->")) return emit(Tok::Arrow, 3);
        if (starts("^^")) return emit(Tok::Hat2, 2);
        if (starts(".seq") &&
            (pos_ + 4 >= s_.size() || !word_char(s_[pos_ + 4]))) return emit(Tok::DotSeq, 4);
        if (starts("\xc2\xb7")) return emit(Tok::DotSeq, 2);  // middle dot
        if (word_char(c)) {
            std::size_t n = 0;
            while (pos_ + n < s_.size() && word_char(s_[pos_ + n])) ++n;
            return emit(Tok::Word, n);
        }
        switch (c) {
            case '{': return emit(Tok::LBrace, 1);
            case '}': return emit(Tok::RBrace, 1);
            case '(': return emit(Tok::LParen, 1);
            case ')': return emit(Tok::RParen, 1);
            case '[': return emit(Tok::LBracket, 1);
            case ']': return emit(Tok::RBracket, 1);
            case ';': return emit(Tok::Semi, 1);
            case ',': return emit(Tok::Comma, 1);
            case '+': return emit(Tok::Plus, 1);
            case '.': return emit(Tok::Dot, 1);
            case '=': return emit(Tok::Eq, 1);
            case '!': return emit(Tok::Bang, 1);
            case '&': return emit(Tok::Amp, 1);
            case '|': return emit(Tok::Bar, 1);
            case '/': return emit(Tok::Slash, 1);
            default:
                throw ParseError(t.span, std::string("unexpected character '") + c + "'");
        }
    }

    const std::string& s_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_, tok2_, saved_;
    bool have2_ = false;
};

class ExprParser {
public:
    ExprParser(Lexer& lx, const Spec& ctx) : lx_(lx), ctx_(ctx) {}

    ExprP expr() { return choice_level(); }

    Prop prop() { return or_level(); }

private:
    [[noreturn]] void fail(const std::string& msg) { throw ParseError(lx_.peek().span, msg); }

    Token expect(Tok k, const char* what) {
        if (lx_.peek().kind != k) fail(std::string("expected ") + what);
        return lx_.take();
    }

    bool is_word(const char* w) {
        return lx_.peek().kind == Tok::Word && lx_.peek().text == w;
    }

    // choice := guarded ('+' guarded)*
    ExprP choice_level() {
        ExprP e = guarded_level();
        while (lx_.peek().kind == Tok::Plus) {
            lx_.take();
            e = choice(e, guarded_level());
        }
        return e;
    }

    // guarded := '[' prop ']' ('->'|'^^') guarded | seqlevel
    ExprP guarded_level() {
        if (lx_.peek().kind == Tok::LBracket) {
            Token open = lx_.take();
            Prop phi = prop();
            expect(Tok::RBracket, "']'");
            if (ctx_.vars.empty())
                throw ParseError(open.span, "condition or signal requires declared vars");
            if (lx_.peek().kind == Tok::Arrow) {
                lx_.take();
                return guard(phi, guarded_level());
            }
            if (lx_.peek().kind == Tok::Hat2) {
                lx_.take();
                return signal(phi, guarded_level());
            }
            fail("expected '->' or '^^' after condition");
        }
        return seq_level();
    }

    // seq := prefixed ((';'|'.seq') prefixed)*
    ExprP seq_level() {
        ExprP e = prefixed();
        for (;;) {
            if (lx_.peek().kind == Tok::Semi) {
                Token t = lx_.take();
                ExprP rhs = prefixed();
                e = ctx_.mode == Mode::Seqc ? seq(e, rhs) : seq_legacy(e, rhs);
                (void)t;
            } else if (lx_.peek().kind == Tok::DotSeq) {
                Token t = lx_.take();
                if (ctx_.mode == Mode::Seqc)
                    throw ParseError(t.span, "sequential composition operator in seqc mode");
                e = seq_legacy(e, prefixed());
            } else {
                return e;
            }
        }
    }

    // prefixed := word '.' prefixed | atom
    ExprP prefixed() {
        if (lx_.peek().kind == Tok::Word && lx_.peek2().kind == Tok::Dot) {
            Token w = lx_.take();
            if (w.text == "NA") fail("NA is reserved");
            lx_.take();  // dot
            Action a = w.text == "tau" ? Action::silent() : Action::named(w.text);
            check_action(a, w.span);
            return prefix(a, prefixed());
        }
        return atom();
    }

    ExprP atom() {
        const Token& t = lx_.peek();
        switch (t.kind) {
            case Tok::Bottom:
                lx_.take();
                return deadlock();
            case Tok::LParen: {
                lx_.take();
                ExprP e = expr();
                expect(Tok::RParen, "')'");
                return e;
            }
            case Tok::LBracket:
                return guarded_level();
            case Tok::Word: {
                Token w = lx_.take();
                if (w.text == "0") return deadlock();
                if (w.text == "1") return accept();
                if (w.text == "NA") {
                    expect(Tok::LParen, "'(' after NA");
                    ExprP e = expr();
                    expect(Tok::RParen, "')'");
                    return na(e);
                }
                if (w.text == "tau") throw ParseError(w.span, "tau must prefix an expression");
                if (!std::isalpha(static_cast<unsigned char>(w.text[0])) && w.text[0] != '_')
                    throw ParseError(w.span, "expected an expression");
                used_idents_.push_back({w.text, w.span});
                return ident(w.text);
            }
            default:
                fail("expected an expression");
        }
    }

    Prop or_level() {
        Prop p = and_level();
        while (lx_.peek().kind == Tok::Bar) {
            lx_.take();
            p = p | and_level();
        }
        return p;
    }
    Prop and_level() {
        Prop p = not_level();
        while (lx_.peek().kind == Tok::Amp) {
            lx_.take();
            p = p & not_level();
        }
        return p;
    }
    Prop not_level() {
        if (lx_.peek().kind == Tok::Bang) {
            lx_.take();
            return !not_level();
        }
        if (lx_.peek().kind == Tok::LParen) {
            lx_.take();
            Prop p = or_level();
            expect(Tok::RParen, "')'");
            return p;
        }
        Token w = expect(Tok::Word, "a proposition");
        int n = ctx_.nvars();
        if (w.text == "true") return Prop::constant(n, true);
        if (w.text == "false") return Prop::constant(n, false);
        for (int i = 0; i < n; ++i)
            if (ctx_.vars[std::size_t(i)] == w.text) return Prop::variable(n, i);
        throw ParseError(w.span, "unknown propositional variable: " + w.text);
    }

    void check_action(const Action& a, SourceSpan at) {
        if (a.tau) return;
        if (ctx_.declared_alphabet) {
            const auto& al = *ctx_.declared_alphabet;
            if (std::find(al.begin(), al.end(), a.label) == al.end())
                throw ParseError(at, "action '" + a.label + "' not in declared alphabet");
        }
    }

public:
    std::vector<std::pair<std::string, SourceSpan>> used_idents_;

private:
    Lexer& lx_;
    const Spec& ctx_;
};

}  // namespace

Spec parse_spec(const std::string& text) {
    Lexer lx(text);
    Spec s;
    auto expect_word = [&](const char* w) {
        if (lx.peek().kind != Tok::Word || lx.peek().text != w)
            throw ParseError(lx.peek().span, std::string("expected '") + w + "'");
        return lx.take();
    };
    auto expect_tok = [&](Tok k, const char* what) {
        if (lx.peek().kind != k)
            throw ParseError(lx.peek().span, std::string("expected ") + what);
        return lx.take();
    };
    auto word_list = [&]() {
        std::vector<std::string> out;
        out.push_back(expect_tok(Tok::Word, "a name").text);
        while (lx.peek().kind == Tok::Comma) {
            lx.take();
            out.push_back(expect_tok(Tok::Word, "a name").text);
        }
        return out;
    };

    expect_word("spec");
    s.name = expect_tok(Tok::Word, "spec name").text;
    expect_tok(Tok::LBrace, "'{'");

    bool saw_init = false, saw_mode = false;
    // Header: mode / vars / alphabet / init, each terminated with ';'.
    while (lx.peek().kind == Tok::Word) {
        const std::string& w = lx.peek().text;
        if (w == "mode") {
            lx.take();
            Token m = expect_tok(Tok::Word, "'seq' or 'seqc'");
            if (m.text == "seq")
                s.mode = Mode::Seq;
            else if (m.text == "seqc")
                s.mode = Mode::Seqc;
            else
                throw ParseError(m.span, "expected 'seq' or 'seqc'");
            saw_mode = true;
        } else if (w == "vars") {
            lx.take();
            s.vars = word_list();
            if (s.vars.size() > 16)
                throw ParseError(lx.peek().span, "at most 16 propositional variables supported");
        } else if (w == "alphabet") {
            lx.take();
            s.declared_alphabet = word_list();
        } else if (w == "init") {
            lx.take();
            s.init = expect_tok(Tok::Word, "identifier").text;
            saw_init = true;
        } else {
            break;  // start of equations
        }
        expect_tok(Tok::Semi, "';'");
    }
    if (!saw_mode) throw ParseError(lx.peek().span, "missing 'mode' declaration");
    if (s.mode == Mode::Seq && !s.vars.empty())
        throw ParseError(lx.peek().span, "vars are only supported in seqc mode");

    std::vector<std::pair<std::string, SourceSpan>> used;
    while (lx.peek().kind == Tok::Word) {
        Token id = lx.take();
        expect_tok(Tok::Eq, "'='");
        ExprParser ep(lx, s);
        ExprP rhs = ep.expr();
        for (auto& u : ep.used_idents_) used.push_back(u);
        if (s.has(id.text)) throw ParseError(id.span, "duplicate equation for " + id.text);
        s.add(id.text, rhs);
    }
    expect_tok(Tok::RBrace, "'}'");
    if (lx.peek().kind != Tok::End) throw ParseError(lx.peek().span, "trailing input");

    if (!saw_init) {
        if (s.equations.empty()) throw ParseError(lx.peek().span, "empty specification");
        s.init = s.equations.front().first;
    }
    for (const auto& [id, at] : used)
        if (!s.has(id)) throw ParseError(at, "undefined identifier: " + id);
    s.validate();
    return s;
}

ExprP parse_expr(const std::string& text, const Spec& context) {
    Lexer lx(text);
    ExprParser ep(lx, context);
    ExprP e = ep.expr();
    if (lx.peek().kind != Tok::End) throw ParseError(lx.peek().span, "trailing input");
    for (const auto& [id, at] : ep.used_idents_)
        if (!context.has(id)) throw ParseError(at, "undefined identifier: " + id);
    return e;
}

Pda parse_pda(const std::string& text) {
    Lexer lx(text);
    Pda m;
    auto expect_tok = [&](Tok k, const char* what) {
        if (lx.peek().kind != k)
            throw ParseError(lx.peek().span, std::string("expected ") + what);
        return lx.take();
    };
    auto expect_word = [&](const char* w) {
        if (lx.peek().kind != Tok::Word || lx.peek().text != w)
            throw ParseError(lx.peek().span, std::string("expected '") + w + "'");
        return lx.take();
    };
    auto word_list = [&]() {
        std::vector<std::string> out;
        out.push_back(expect_tok(Tok::Word, "a name").text);
        while (lx.peek().kind == Tok::Comma) {
            lx.take();
            out.push_back(expect_tok(Tok::Word, "a name").text);
        }
        return out;
    };

    expect_word("pda");
    m.name = expect_tok(Tok::Word, "pda name").text;
    expect_tok(Tok::LBrace, "'{'");

    bool saw_states = false, saw_init = false;
    auto find_state = [&](const Token& t) {
        for (std::size_t i = 0; i < m.states.size(); ++i)
            if (m.states[i] == t.text) return int(i);
        throw ParseError(t.span, "undeclared state: " + t.text);
    };
    auto find_datum = [&](const Token& t) {
        for (std::size_t i = 0; i < m.data.size(); ++i)
            if (m.data[i] == t.text) return int(i);
        throw ParseError(t.span, "undeclared data symbol: " + t.text);
    };

    while (lx.peek().kind == Tok::Word) {
        const std::string& w = lx.peek().text;
        if (w == "states") {
            lx.take();
            m.states = word_list();
            saw_states = true;
            expect_tok(Tok::Semi, "';'");
        } else if (w == "init") {
            lx.take();
            Token t = expect_tok(Tok::Word, "state");
            m.init = find_state(t);
            saw_init = true;
            expect_tok(Tok::Semi, "';'");
        } else if (w == "finals") {
            lx.take();
            if (lx.peek().kind == Tok::Word)
                for (const auto& f : word_list()) {
                    Token fake{Tok::Word, f, lx.peek().span};
                    m.finals.insert(find_state(fake));
                }
            expect_tok(Tok::Semi, "';'");
        } else if (w == "data") {
            lx.take();
            m.data = word_list();
            expect_tok(Tok::Semi, "';'");
        } else if (w == "alphabet") {
            lx.take();
            m.declared_alphabet = word_list();
            expect_tok(Tok::Semi, "';'");
        } else {
            // transition: src --act[pop/push]--> dst
            if (!saw_states) throw ParseError(lx.peek().span, "states must be declared first");
            PdaTransition tr;
            tr.src = find_state(lx.take());
            expect_tok(Tok::Dash2, "'--'");
            Token act = expect_tok(Tok::Word, "action");
            tr.act = act.text == "tau" ? Action::silent() : Action::named(act.text);
            if (!tr.act.tau && m.declared_alphabet) {
                const auto& al = *m.declared_alphabet;
                if (std::find(al.begin(), al.end(), tr.act.label) == al.end())
                    throw ParseError(act.span, "action '" + act.text + "' not in declared alphabet");
            }
            expect_tok(Tok::LBracket, "'['");
            Token pop = expect_tok(Tok::Word, "data symbol or eps");
            if (pop.text != "eps") tr.pop = find_datum(pop);
            expect_tok(Tok::Slash, "'/'");
            Token p0 = expect_tok(Tok::Word, "data symbol or eps");
            if (p0.text != "eps") {
                tr.push.push_back(find_datum(p0));
                while (lx.peek().kind == Tok::Comma) {
                    lx.take();
                    tr.push.push_back(find_datum(expect_tok(Tok::Word, "data symbol")));
                }
            }
            expect_tok(Tok::RBracket, "']'");
            expect_tok(Tok::Arrow2, "'-->'");
            tr.dst = find_state(lx.take());
            m.transitions.push_back(std::move(tr));
        }
    }
    expect_tok(Tok::RBrace, "'}'");
    if (lx.peek().kind != Tok::End) throw ParseError(lx.peek().span, "trailing input");
    if (!saw_states || m.states.empty()) throw ParseError(lx.peek().span, "pda needs states");
    if (!saw_init) m.init = 0;
    m.validate();
    return m;
}

}  // namespace pdaproc
