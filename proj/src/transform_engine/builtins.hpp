#pragma once

#include "stmtsim/operator_tree.hpp"
#include "stmtsim/rules.hpp"

#include <optional>

namespace stmtsim::detail {

/// Applies a builtin at `position` of an equality goal. Returns the whole new
/// goal.
std::optional<OperatorTree> apply_builtin(Builtin b, const OperatorTree &goal, const NodePath &position);

} // namespace stmtsim::detail
