#pragma once

#include "stmtsim/operator_tree.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace stmtsim {

class PatternError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

/// Parses "(head child...)" / "atom" into a tree; internal labels get the
/// slot suffix. Throws PatternError.
OperatorTree parse_sexpr(std::string_view text);

/// "?x" style metavariable.
bool is_metavariable(std::string_view label);

/// Metavariables used in leaf or head position.
std::set<std::string> metavariables(const OperatorTree &pattern);

using Bindings = std::map<std::string, OperatorTree>;

/// Structural match. A leaf metavariable matches any subtree; a head
/// metavariable matches any internal node with the same arity and binds the
/// head as a leaf. Repeated metavariables must bind equal trees.
std::optional<Bindings> match_pattern(const OperatorTree &pattern, const OperatorTree &tree);

/// Replaces metavariables by their bindings. A head metavariable bound to a
/// compound tree yields an "app" node. Throws PatternError on an unbound
/// metavariable.
OperatorTree instantiate(const OperatorTree &pattern, const Bindings &bindings);

} // namespace stmtsim
