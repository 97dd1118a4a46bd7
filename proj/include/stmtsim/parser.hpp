#pragma once

#include "stmtsim/ast.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stmtsim {

class ParseError : public std::runtime_error
{
  public:
    ParseError(const std::string &message, Span span, std::vector<std::string> expected)
        : std::runtime_error(message), span_(span), expected_(std::move(expected))
    {}

    Span span() const noexcept { return span_; }
    const std::vector<std::string> &expected() const noexcept { return expected_; }

  private:
    Span span_;
    std::vector<std::string> expected_;
};

/// Parses `theorem <name> <binders> : <type> := ...` (also `lemma`, `example`)
/// or a bare type expression. Anything after a top-level `:=` is discarded.
/// Throws LexError or ParseError.
StatementAst parse_statement(std::string_view source);

/// Parses a single expression; the whole input must be consumed.
Expr parse_expression(std::string_view source);

/// Source line containing the span with a caret underline, for diagnostics.
std::string caret_diagnostic(std::string_view source, Span span);

} // namespace stmtsim
