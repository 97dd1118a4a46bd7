#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stmtsim {

/// Half-open byte range [begin, end) into the source text.
struct Span
{
    std::size_t begin = 0;
    std::size_t end = 0;

    friend bool operator==(const Span &, const Span &) = default;
};

enum class TokenKind {
    Identifier,
    Numeral,
    Operator,
    BinderKeyword,
    Bracket,
    Punctuation,
    Keyword,
};

std::string_view to_string(TokenKind kind);

struct Token
{
    TokenKind kind;
    std::string text; ///< exact source slice
    Span span;

    friend bool operator==(const Token &, const Token &) = default;
};

class LexError : public std::runtime_error
{
  public:
    LexError(const std::string &message, Span span)
        : std::runtime_error(message), span_(span)
    {}

    Span span() const noexcept { return span_; }

  private:
    Span span_;
};

/// Splits UTF-8 statement text into tokens. Whitespace separates tokens and is
/// dropped; every other character belongs to exactly one token.
/// Throws LexError on invalid UTF-8 or a character outside the operator table.
std::vector<Token> tokenize(std::string_view source);

/// Like tokenize, but never fails: unrecognized characters become single
/// Punctuation tokens. Used for the degraded scoring path.
std::vector<Token> tokenize_lenient(std::string_view source);

/// Canonical spelling of an operator token ("->" becomes "→", "<=" becomes
/// "≤"). Non-aliased operators are returned unchanged.
std::string_view canonical_operator(std::string_view op);

} // namespace stmtsim
