#include "stmtsim/transted.hpp"

#include "builtins.hpp"

#include "stmtsim/normalize.hpp"
#include "stmtsim/opt_builder.hpp"
#include "stmtsim/parser.hpp"
#include "stmtsim/pattern.hpp"
#include "stmtsim/ted.hpp"

#include <algorithm>
#include <queue>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace stmtsim {

void SearchBudget::validate() const
{
    if (max_expanded_nodes == 0)
        throw BudgetError("max expanded nodes must be positive");
    if (max_depth == 0)
        throw BudgetError("max depth must be positive");
    if (max_wall_time && max_wall_time->count() <= 0)
        throw BudgetError("max wall time must be positive");
}

OperatorTree merge_to_equality(const StatementAst &label, const StatementAst &prediction)
{
    return node("=", {build_opt(label), build_opt(prediction)});
}

namespace {

bool is_goal(const OperatorTree &t) { return t.label == "=<SLOT>" && t.children.size() == 2; }

/// Smaller rendering on the left, so a pair and its mirror image search the
/// same space.
OperatorTree oriented(OperatorTree goal)
{
    if (to_sexpr(goal.children[1]) < to_sexpr(goal.children[0]))
        std::swap(goal.children[0], goal.children[1]);
    return goal;
}

struct Candidate
{
    OperatorTree goal; // oriented
    std::string key;
    TraceStep step;
};

/// All rewrites of an equality goal, in rule order then preorder position.
std::vector<Candidate> rewrites(const OperatorTree &goal, const RuleLibrary &rules)
{
    std::vector<Candidate> out;
    const auto paths = preorder_paths(goal);
    for (const auto &rule : rules.rules()) {
        for (const auto &path : paths) {
            if (rule.root_only && !path.empty())
                break;
            auto next = apply_rule(rule, goal, path);
            if (!next)
                continue;
            OperatorTree g = oriented(std::move(*next));
            std::string key = to_sexpr(g);
            out.push_back({std::move(g), std::move(key), {rule.name, path_to_string(path)}});
        }
    }
    return out;
}

SearchNode make_node(OperatorTree goal, std::size_t depth, std::vector<TraceStep> trace)
{
    SearchNode n;
    n.depth = depth;
    n.trace = std::move(trace);
    if (goal.children[0] == goal.children[1]) {
        n.heuristic = 0;
    } else {
        n.heuristic = ted_unit(goal.children[0], goal.children[1]);
        n.goal = std::move(goal);
    }
    return n;
}

TransTedResult finish(TransTedResult r)
{
    r.similarity = transted_similarity(r, r.left, r.right);
    return r;
}

} // namespace

std::optional<OperatorTree> apply_rule(const RewriteRule &rule, const OperatorTree &goal, const NodePath &position)
{
    if (!is_goal(goal) || (rule.root_only && !position.empty()))
        return std::nullopt;
    std::optional<OperatorTree> result;
    if (rule.builtin != Builtin::None) {
        result = detail::apply_builtin(rule.builtin, goal, position);
    } else {
        const OperatorTree *target = subtree_at(goal, position);
        if (!target)
            return std::nullopt;
        auto bindings = match_pattern(rule.lhs, *target);
        if (!bindings)
            return std::nullopt;
        OperatorTree rewritten = instantiate(rule.rhs, *bindings);
        if (rewritten == *target)
            return std::nullopt;
        result = goal;
        *subtree_at(*result, position) = std::move(rewritten);
    }
    if (!result || !is_goal(*result) || *result == goal)
        return std::nullopt;
    return result;
}

std::vector<SearchNode> enumerate_children(const SearchNode &parent, const RuleLibrary &rules)
{
    if (parent.completed())
        throw std::logic_error("enumerate_children called on a completed node");
    std::vector<SearchNode> out;
    for (auto &c : rewrites(*parent.goal, rules)) {
        auto trace = parent.trace;
        trace.push_back(std::move(c.step));
        out.push_back(make_node(std::move(c.goal), parent.depth + 1, std::move(trace)));
    }
    return out;
}

TransTedResult transted_goal(const OperatorTree &goal, const SearchBudget &budget, const RuleLibrary &rules)
{
    budget.validate();
    if (!is_goal(goal))
        throw std::invalid_argument("transted needs an equality goal");
    const auto started = std::chrono::steady_clock::now();

    TransTedResult result;
    result.left = goal.children[0];
    result.right = goal.children[1];
    const std::size_t initial = ted_unit(result.left, result.right);
    result.initial_distance = initial;

    // numeric normalization, then the syntactic identity check
    OperatorTree start = oriented(goal);
    std::vector<TraceStep> pre_trace;
    for (Builtin b : {Builtin::ConstFold, Builtin::CastCollapse}) {
        if (!rules.has(b))
            continue;
        if (auto next = detail::apply_builtin(b, start, {})) {
            start = oriented(std::move(*next));
            pre_trace.push_back({std::string(builtin_name(b)), "/"});
        }
    }

    std::size_t best = initial;
    std::vector<TraceStep> best_trace;

    struct Entry
    {
        std::size_t heuristic;
        std::size_t depth;
        std::string key;
        std::size_t index;
        bool operator>(const Entry &o) const
        {
            return std::tie(heuristic, depth, key, index) > std::tie(o.heuristic, o.depth, o.key, o.index);
        }
    };
    std::vector<SearchNode> nodes;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;
    std::unordered_set<std::string> visited;
    std::unordered_map<std::string, std::size_t> queued_depth;

    auto proved = [&](std::vector<TraceStep> trace) {
        result.distance = 0;
        result.proved_equal = true;
        result.trace = std::move(trace);
        return finish(std::move(result));
    };

    {
        SearchNode root = make_node(start, 0, pre_trace);
        if (root.completed()) {
            result.expanded = 1;
            return proved(std::move(root.trace));
        }
        std::string key = to_sexpr(*root.goal);
        queued_depth[key] = 0;
        frontier.push({root.heuristic, 0, std::move(key), 0});
        nodes.push_back(std::move(root));
    }

    while (!frontier.empty()) {
        Entry top = frontier.top();
        frontier.pop();
        if (!visited.insert(top.key).second)
            continue;
        ++result.expanded;
        const SearchNode &current = nodes[top.index];
        if (current.heuristic < best) {
            best = current.heuristic;
            best_trace = current.trace;
        }
        if (result.expanded >= budget.max_expanded_nodes)
            break;
        if (budget.max_wall_time && std::chrono::steady_clock::now() - started >= *budget.max_wall_time)
            break;
        if (current.depth >= budget.max_depth)
            continue;
        const std::size_t depth = current.depth + 1;
        const std::vector<TraceStep> parent_trace = current.trace;
        for (auto &c : rewrites(*current.goal, rules)) {
            if (visited.contains(c.key))
                continue;
            auto q = queued_depth.find(c.key);
            if (q != queued_depth.end() && q->second <= depth)
                continue;
            auto trace = parent_trace;
            trace.push_back(std::move(c.step));
            SearchNode child = make_node(std::move(c.goal), depth, std::move(trace));
            if (child.completed()) {
                ++result.expanded;
                return proved(std::move(child.trace));
            }
            queued_depth[c.key] = depth;
            frontier.push({child.heuristic, depth, c.key, nodes.size()});
            nodes.push_back(std::move(child));
        }
    }

    result.distance = best;
    result.trace = std::move(best_trace);
    return finish(std::move(result));
}

TransTedResult transted(const StatementAst &label, const StatementAst &prediction, const SearchBudget &budget,
                        const RuleLibrary &rules)
{
    return transted_goal(merge_to_equality(label, prediction), budget, rules);
}

TransTedResult transted_text(std::string_view label, std::string_view prediction, const SearchBudget &budget,
                             const RuleLibrary &rules)
{
    budget.validate();
    StatementAst a, b;
    bool parsed = false;
    try {
        a = parse_statement(label);
        b = parse_statement(prediction);
        parsed = true;
    } catch (const ParseError &) {
    } catch (const LexError &) {
    }
    if (!parsed) {
        TransTedResult r;
        r.degraded = true;
        r.left = token_level_tree(label);
        r.right = token_level_tree(prediction);
        r.initial_distance = ted_unit(r.left, r.right);
        r.distance = r.initial_distance;
        r.proved_equal = r.left == r.right;
        return finish(std::move(r));
    }
    return transted(a, b, budget, rules);
}

double transted_similarity(const TransTedResult &result, const OperatorTree &t1, const OperatorTree &t2)
{
    return to_double(similarity_from_distance(result.distance, t1, t2));
}

} // namespace stmtsim
