#include "builtins.hpp"

#include "stmtsim/normalize.hpp"

namespace stmtsim::detail {

namespace {

using Sides = std::pair<const OperatorTree *, const OperatorTree *>;

std::optional<Sides> sides(const OperatorTree &goal)
{
    if (goal.label != "=<SLOT>" || goal.children.size() != 2)
        return std::nullopt;
    return Sides{&goal.children[0], &goal.children[1]};
}

OperatorTree equality(OperatorTree a, OperatorTree b) { return node("=", {std::move(a), std::move(b)}); }

bool is_compound_call(const OperatorTree &t)
{
    return !t.is_leaf() && !is_binding_node(t) && (!is_symbolic_head(head_of(t.label)) || t.label == "app<SLOT>");
}

OperatorTree function_part(const OperatorTree &t)
{
    return t.label == "app<SLOT>" ? t.children[0] : leaf(std::string(head_of(t.label)));
}

std::vector<OperatorTree> argument_part(const OperatorTree &t)
{
    if (t.label == "app<SLOT>")
        return {t.children.begin() + 1, t.children.end()};
    return t.children;
}

std::optional<OperatorTree> congr_arg(const OperatorTree &l, const OperatorTree &r)
{
    if (l.is_leaf() || l.label != r.label || l.children.size() != r.children.size() || is_binding_node(l)
        || is_binding_node(r))
        return std::nullopt;
    std::optional<std::size_t> differing;
    for (std::size_t i = 0; i < l.children.size(); ++i) {
        if (l.children[i] == r.children[i])
            continue;
        if (differing)
            return std::nullopt; // two residual goals
        differing = i;
    }
    if (!differing)
        return std::nullopt;
    return equality(l.children[*differing], r.children[*differing]);
}

std::optional<OperatorTree> congr_fun(const OperatorTree &l, const OperatorTree &r)
{
    if (!is_compound_call(l) || !is_compound_call(r))
        return std::nullopt;
    if (argument_part(l) != argument_part(r))
        return std::nullopt;
    OperatorTree f = function_part(l), g = function_part(r);
    if (f == g)
        return std::nullopt;
    return equality(std::move(f), std::move(g));
}

/// Binder node without its first name.
OperatorTree peel(const OperatorTree &b)
{
    if (b.children.size() == 3)
        return b.children[2];
    return OperatorTree(b.label, std::vector<OperatorTree>(b.children.begin() + 1, b.children.end()));
}

std::string fresh(const std::string &base, const std::set<std::string> &avoid)
{
    std::string c = base + "'";
    while (avoid.contains(c))
        c += "'";
    return c;
}

/// Peels the first bound name on both sides, unifying the right name with the
/// left one (or a fresh name when the left name is free on the right).
std::optional<OperatorTree> binder_congr(const OperatorTree &l, const OperatorTree &r,
                                         std::initializer_list<std::string_view> heads)
{
    if (!is_binding_node(l) || !is_binding_node(r) || l.label != r.label)
        return std::nullopt;
    bool allowed = false;
    for (auto h : heads)
        allowed |= head_of(l.label) == h;
    if (!allowed)
        return std::nullopt;
    if (l.children[l.children.size() - 2] != r.children[r.children.size() - 2])
        return std::nullopt;
    const std::string x = l.children[0].label;
    const std::string y = r.children[0].label;
    OperatorTree lb = peel(l), rb = peel(r);
    if (x != y) {
        if (occurs_free(rb, x)) {
            std::set<std::string> avoid = free_leaves(lb);
            for (const auto &f : free_leaves(rb))
                avoid.insert(f);
            avoid.insert(x);
            avoid.insert(y);
            const std::string z = fresh(x, avoid);
            lb = substitute(lb, x, leaf(z));
            rb = substitute(rb, y, leaf(z));
        } else {
            rb = substitute(rb, y, leaf(x));
        }
    }
    return equality(std::move(lb), std::move(rb));
}

std::optional<OperatorTree> implies_congr(const OperatorTree &l, const OperatorTree &r)
{
    if (l.label != "→<SLOT>" || r.label != "→<SLOT>" || l.children.size() != 2 || r.children.size() != 2)
        return std::nullopt;
    if (l.children[0] == r.children[0] && l.children[1] != r.children[1])
        return equality(l.children[1], r.children[1]);
    if (l.children[1] == r.children[1] && l.children[0] != r.children[0])
        return equality(l.children[0], r.children[0]);
    return std::nullopt;
}

std::optional<OperatorTree> forall_swap(const OperatorTree &t)
{
    if (!is_binding_node(t))
        return std::nullopt;
    const std::string_view q = head_of(t.label);
    if (q != "∀" && q != "∃")
        return std::nullopt;
    const std::size_t n = t.children.size();
    if (n > 3) {
        if (t.children[0] == t.children[1])
            return std::nullopt;
        OperatorTree out = t;
        std::swap(out.children[0], out.children[1]);
        return out;
    }
    const OperatorTree &body = t.children[2];
    if (body.label != t.label || !is_binding_node(body) || body.children.size() != 3)
        return std::nullopt;
    const std::string &x = t.children[0].label;
    const std::string &y = body.children[0].label;
    const OperatorTree &tx = t.children[1];
    const OperatorTree &ty = body.children[1];
    if (x == y || occurs_free(ty, x) || occurs_free(tx, y))
        return std::nullopt;
    return OperatorTree(t.label, {leaf(y), ty, OperatorTree(t.label, {leaf(x), tx, body.children[2]})});
}

std::optional<OperatorTree> let_inline(const OperatorTree &t)
{
    if (t.label != "let<SLOT>" || t.children.size() != 3 || !t.children[0].is_leaf())
        return std::nullopt;
    return substitute(t.children[2], t.children[0].label, t.children[1]);
}

std::optional<OperatorTree> changed(const OperatorTree &before, OperatorTree after)
{
    if (after == before)
        return std::nullopt;
    return after;
}

} // namespace

std::optional<OperatorTree> apply_builtin(Builtin b, const OperatorTree &goal, const NodePath &position)
{
    if (b == Builtin::ForallSwap || b == Builtin::LetInline) {
        const OperatorTree *target = subtree_at(goal, position);
        if (!target)
            return std::nullopt;
        auto rewritten = b == Builtin::ForallSwap ? forall_swap(*target) : let_inline(*target);
        if (!rewritten)
            return std::nullopt;
        OperatorTree out = goal;
        *subtree_at(out, position) = std::move(*rewritten);
        return out;
    }
    if (!position.empty())
        return std::nullopt;
    auto s = sides(goal);
    if (!s)
        return std::nullopt;
    const OperatorTree &l = *s->first;
    const OperatorTree &r = *s->second;
    switch (b) {
    case Builtin::CongrArg: return congr_arg(l, r);
    case Builtin::CongrFun: return congr_fun(l, r);
    case Builtin::ForallCongr: return binder_congr(l, r, {"∀", "∃", "∃!"});
    case Builtin::ImpliesCongr: return implies_congr(l, r);
    case Builtin::Ext: return binder_congr(l, r, {"fun"});
    case Builtin::ConstFold: return changed(goal, const_fold(goal));
    case Builtin::CastCollapse: return changed(goal, cast_collapse(goal));
    default: return std::nullopt;
    }
}

} // namespace stmtsim::detail
