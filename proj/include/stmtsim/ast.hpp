#pragma once

#include "stmtsim/lexer.hpp"

#include <optional>
#include <string>
#include <vector>

namespace stmtsim {

enum class ExprKind {
    Ident,      ///< text = name
    Numeral,    ///< text = literal
    Paren,      ///< args[0]
    Prefix,     ///< text = canonical operator, args[0]
    Postfix,    ///< text = operator (".1", "⁻¹"), args[0]
    Infix,      ///< text = canonical operator, args[0], args[1]
    App,        ///< args[0] = head, args[1..] = arguments
    Tuple,      ///< (a, b, ...)
    AnonCtor,   ///< ⟨a, b, ...⟩
    Abs,        ///< |a|
    Ascription, ///< (args[0] : args[1])
    Binder,     ///< text ∈ {∀, ∃, ∃!, fun}; groups; args[0] = body
    BigOp,      ///< text ∈ {∑, ∏}; groups[0] (one name, domain in group type); args[0] = body
    Let,        ///< text = bound name; args = [value, body]; optional type in groups
};

enum class BinderKind { Explicit, Implicit, Instance };

struct Expr;

/// One binder group such as `(x y : ℝ)`, `{R : Type*}`, `[CommRing R]` or the
/// bare `x ∈ s` form. A missing type is left empty.
struct BinderGroup
{
    std::vector<std::string> names;
    BinderKind kind = BinderKind::Explicit;
    std::vector<Expr> type; ///< zero or one element
    /// Binder predicate such as `x ∈ s` or `x > 0`: operator and right operand.
    std::string predicate_op;
    std::vector<Expr> predicate_rhs; ///< zero or one element
};

struct Expr
{
    ExprKind kind = ExprKind::Ident;
    std::string text;
    std::vector<Expr> args;
    std::vector<BinderGroup> groups;
    Span span;
};

struct StatementAst
{
    std::string name; ///< empty for bare expressions and `example`
    std::vector<BinderGroup> binders;
    Expr body;
};

} // namespace stmtsim
