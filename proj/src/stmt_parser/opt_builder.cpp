#include "stmtsim/opt_builder.hpp"

#include "stmtsim/parser.hpp"

#include <cassert>

namespace stmtsim {

namespace {

const Expr &strip_parens(const Expr &e)
{
    const Expr *cur = &e;
    while (cur->kind == ExprKind::Paren)
        cur = &cur->args[0];
    return *cur;
}

OperatorTree type_or_hole(const BinderGroup &g)
{
    return g.type.empty() ? leaf("_") : expr_to_opt(g.type[0]);
}

/// ∀/∃/fun over one group: [names..., type, body]. Binder predicates desugar
/// to an implication (∀) or conjunction (∃, ∃!).
OperatorTree bind_group(std::string_view op, const BinderGroup &g, OperatorTree body)
{
    if (!g.predicate_op.empty()) {
        OperatorTree rhs = expr_to_opt(g.predicate_rhs[0]);
        std::string_view connective = (op == "∀") ? "→" : "∧";
        for (auto it = g.names.rbegin(); it != g.names.rend(); ++it) {
            OperatorTree guard = node(g.predicate_op, {leaf(*it), rhs});
            body = node(op, {leaf(*it), leaf("_"), node(connective, {std::move(guard), std::move(body)})});
        }
        return body;
    }
    std::vector<OperatorTree> kids;
    for (const auto &n : g.names)
        kids.push_back(leaf(n));
    kids.push_back(type_or_hole(g));
    kids.push_back(std::move(body));
    return node(op, std::move(kids));
}

OperatorTree tuple_tree(const std::vector<Expr> &elems, std::size_t from)
{
    if (from + 1 == elems.size())
        return expr_to_opt(elems[from]);
    return node("Prod.mk", {expr_to_opt(elems[from]), tuple_tree(elems, from + 1)});
}

} // namespace

OperatorTree expr_to_opt(const Expr &e)
{
    switch (e.kind) {
    case ExprKind::Ident:
    case ExprKind::Numeral:
        return leaf(e.text);
    case ExprKind::Paren:
        return expr_to_opt(e.args[0]);
    case ExprKind::Prefix:
    case ExprKind::Postfix:
        return node(e.text, {expr_to_opt(e.args[0])});
    case ExprKind::Infix:
        return node(e.text, {expr_to_opt(e.args[0]), expr_to_opt(e.args[1])});
    case ExprKind::App: {
        const Expr &head = strip_parens(e.args[0]);
        std::vector<OperatorTree> args;
        for (std::size_t i = 1; i < e.args.size(); ++i)
            args.push_back(expr_to_opt(e.args[i]));
        if (head.kind == ExprKind::Ident)
            return node(head.text, std::move(args));
        OperatorTree head_tree = expr_to_opt(head);
        // (f a) b is f a b
        if (head.kind == ExprKind::App) {
            for (auto &a : args)
                head_tree.children.push_back(std::move(a));
            return head_tree;
        }
        args.insert(args.begin(), std::move(head_tree));
        return node("app", std::move(args));
    }
    case ExprKind::Tuple:
        return tuple_tree(e.args, 0);
    case ExprKind::AnonCtor: {
        if (e.args.empty())
            return leaf("⟨⟩");
        std::vector<OperatorTree> kids;
        for (const auto &a : e.args)
            kids.push_back(expr_to_opt(a));
        return node("⟨⟩", std::move(kids));
    }
    case ExprKind::Abs:
        return node("abs", {expr_to_opt(e.args[0])});
    case ExprKind::Ascription:
        return node(":", {expr_to_opt(e.args[0]), expr_to_opt(e.args[1])});
    case ExprKind::Binder: {
        OperatorTree body = expr_to_opt(e.args[0]);
        for (auto it = e.groups.rbegin(); it != e.groups.rend(); ++it)
            body = bind_group(e.text, *it, std::move(body));
        return body;
    }
    case ExprKind::BigOp: {
        const BinderGroup &g = e.groups[0];
        return node(e.text, {leaf(g.names[0]), type_or_hole(g), expr_to_opt(e.args[0])});
    }
    case ExprKind::Let:
        return node("let", {leaf(e.text), expr_to_opt(e.args[0]), expr_to_opt(e.args[1])});
    }
    assert(false && "unhandled expression kind");
    return leaf("?");
}

OperatorTree build_opt(const StatementAst &ast)
{
    OperatorTree result = expr_to_opt(ast.body);
    for (auto it = ast.binders.rbegin(); it != ast.binders.rend(); ++it) {
        const BinderGroup &g = *it;
        bool used = false;
        for (const auto &n : g.names)
            used |= occurs_free(result, n);
        if (!used) {
            OperatorTree type = type_or_hole(g);
            for (std::size_t i = 0; i < g.names.size(); ++i)
                result = node("→", {type, std::move(result)});
        } else {
            result = bind_group("∀", g, std::move(result));
        }
    }
    return result;
}

OperatorTree statement_opt(std::string_view source) { return build_opt(parse_statement(source)); }

OperatorTree token_level_tree(std::string_view source)
{
    std::vector<OperatorTree> kids;
    for (const auto &t : tokenize_lenient(source))
        kids.push_back(leaf(t.text));
    if (kids.empty())
        return leaf("tokens");
    return node("tokens", std::move(kids));
}

} // namespace stmtsim
