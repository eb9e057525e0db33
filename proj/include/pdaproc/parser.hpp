#pragma once

#include <string>

#include "pdaproc/core.hpp"
#include "pdaproc/pda.hpp"

namespace pdaproc {

struct SourceSpan {
    int line = 1;
    int column = 1;
    std::size_t offset = 0;
    std::size_t end = 0;
};

class ParseError : public Error {
public:
    ParseError(SourceSpan where, const std::string& msg)
        : Error("parse error at " + std::to_string(where.line) + ":" +
                std::to_string(where.column) + ": " + msg),
          span(where) {}
    SourceSpan span;
};

Spec parse_spec(const std::string& text);
Pda parse_pda(const std::string& text);

// Parses a single process expression in the context of an existing spec
// (its mode, variables, and identifier table).
ExprP parse_expr(const std::string& text, const Spec& context);

}  // namespace pdaproc
