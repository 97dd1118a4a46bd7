#pragma once

#include "stmtsim/ast.hpp"
#include "stmtsim/operator_tree.hpp"
#include "stmtsim/rational.hpp"
#include "stmtsim/rules.hpp"

#include <chrono>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stmtsim {

/// Raised for non-positive budget fields.
class BudgetError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

struct SearchBudget
{
    std::size_t max_expanded_nodes = 10000;
    std::size_t max_depth = 30;
    /// Advisory; nullopt disables the clock. Results are only reproducible
    /// under the node budget.
    std::optional<std::chrono::milliseconds> max_wall_time = std::chrono::milliseconds(10000);

    /// Throws BudgetError.
    void validate() const;
};

struct TraceStep
{
    std::string rule;
    std::string position; ///< "/0/2" style path into the goal

    friend bool operator==(const TraceStep &, const TraceStep &) = default;
};

struct SearchNode
{
    /// Equality-rooted goal; nullopt once the two sides coincide.
    std::optional<OperatorTree> goal;
    std::size_t heuristic = 0;
    std::size_t depth = 0;
    std::vector<TraceStep> trace;

    bool completed() const noexcept { return !goal.has_value(); }
};

struct TransTedResult
{
    Rational distance;
    double similarity = 0.0;
    bool proved_equal = false;
    std::vector<TraceStep> trace;
    std::size_t expanded = 0;
    /// Unit-cost TED between the two merged sides before any rewriting.
    Rational initial_distance;
    /// Set when a statement failed to parse and both sides fell back to
    /// token-level trees.
    bool degraded = false;
    OperatorTree left;
    OperatorTree right;
};

/// "=<SLOT>"[folded label, folded prediction].
OperatorTree merge_to_equality(const StatementAst &label, const StatementAst &prediction);

/// One rewrite at one position. Returns the new equality goal, or nullopt when
/// the rule does not match, is guarded away, changes nothing, or would leave
/// more than one goal.
std::optional<OperatorTree> apply_rule(const RewriteRule &rule, const OperatorTree &goal, const NodePath &position);

/// Every successful (rule, position) application in library order, then
/// preorder position. Children whose sides coincide are completed. Throws
/// std::logic_error on a completed node.
std::vector<SearchNode> enumerate_children(const SearchNode &node, const RuleLibrary &rules);

/// Best-first search over rewrites of the merged goal. Returns the smallest
/// side-to-side TED seen, 0 when the goal closes.
TransTedResult transted(const StatementAst &label, const StatementAst &prediction,
                        const SearchBudget &budget = {}, const RuleLibrary &rules = RuleLibrary::shipped());

/// Same search starting from an existing equality goal.
TransTedResult transted_goal(const OperatorTree &goal, const SearchBudget &budget = {},
                             const RuleLibrary &rules = RuleLibrary::shipped());

/// Parses both statements first; on a parse failure scores TED between
/// token-level trees and sets `degraded`.
TransTedResult transted_text(std::string_view label, std::string_view prediction, const SearchBudget &budget = {},
                             const RuleLibrary &rules = RuleLibrary::shipped());

/// 1 - distance / max(|t1|, |t2|), unclamped.
double transted_similarity(const TransTedResult &result, const OperatorTree &t1, const OperatorTree &t2);

} // namespace stmtsim
