#pragma once

#include "stmtsim/ast.hpp"
#include "stmtsim/operator_tree.hpp"

#include <string_view>

namespace stmtsim {

/// Operator tree of a single expression. Parentheses vanish, operators and
/// binders become `<SLOT>` nodes, application is labeled by its head.
OperatorTree expr_to_opt(const Expr &e);

/// Operator tree of a statement's type: the binder list is folded into the
/// body from the right. A binder group whose names are unused in the
/// remainder becomes an implication from its type (as `(h : p)` and
/// `[CommRing R]` do); other groups become ∀ nodes. The theorem name is
/// dropped.
OperatorTree build_opt(const StatementAst &ast);

/// parse_statement followed by build_opt.
OperatorTree statement_opt(std::string_view source);

/// Best-effort flat tree of the lenient token stream, for inputs that do not
/// parse: root "tokens<SLOT>" with one leaf per token (a bare "tokens" leaf
/// for empty input).
OperatorTree token_level_tree(std::string_view source);

} // namespace stmtsim
