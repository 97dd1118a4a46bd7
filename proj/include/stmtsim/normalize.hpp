#pragma once

#include "stmtsim/operator_tree.hpp"
#include "stmtsim/rational.hpp"

#include <optional>

namespace stmtsim {

/// Value of a numeral leaf or a negated numeral; nullopt otherwise.
std::optional<Rational> numeral_value(const OperatorTree &t);

/// Canonical tree for an integer: a leaf, or "-<SLOT>"[leaf] when negative.
OperatorTree integer_tree(const Rational &value);

/// Folds + - * / % ^ over integer numerals bottom-up. Only folds that agree
/// in ℕ, ℤ and fields are taken: truncating subtraction, inexact division
/// and % on negatives are left alone. Negation of a numeral is canonicalized.
OperatorTree const_fold(const OperatorTree &t);

/// Drops ↑ over numerals and collapses nested ↑.
OperatorTree cast_collapse(const OperatorTree &t);

} // namespace stmtsim
