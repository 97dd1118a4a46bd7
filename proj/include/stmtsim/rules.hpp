#pragma once

#include "stmtsim/operator_tree.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stmtsim {

/// Procedural rules referenced by reserved names in a rule file.
enum class Builtin {
    None,
    CongrArg,     ///< f a = f b  =>  a = b (exactly one differing argument)
    CongrFun,     ///< f a = g a  =>  f = g
    ForallCongr,  ///< (∀ x : T, P) = (∀ y : T, Q)  =>  P = Q[y := x]; also ∃ and ∃!
    ImpliesCongr, ///< (A → P) = (A → Q)  =>  P = Q, and (P → C) = (Q → C)  =>  P = Q
    Ext,          ///< (fun x : T => a) = (fun y : T => b)  =>  a = b[y := x]
    ForallSwap,   ///< ∀ x : A, ∀ y : B, P  =>  ∀ y : B, ∀ x : A, P
    LetInline,    ///< let x := v; b  =>  b[x := v]
    ConstFold,    ///< exact arithmetic on numeral subtrees
    CastCollapse, ///< ↑ over numerals and nested ↑
};

std::string_view builtin_name(Builtin b);

/// One rewrite. Pattern rules rewrite lhs to rhs at any position (only at the
/// goal when root_only); builtins carry no patterns.
struct RewriteRule
{
    std::string name;
    Builtin builtin = Builtin::None;
    OperatorTree lhs;
    OperatorTree rhs;
    bool root_only = false;
};

class RuleError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

/// The rule file could not be read.
class RuleFileError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Ordered rule set loaded from a JSON list of
/// {name, lhs, rhs, guard?, commutes?} entries. `guard` is "root";
/// `commutes` lists operators substituted for the ?op metavariable, one
/// rule per operator, named "name(op)". Entries with only a name select a
/// builtin.
class RuleLibrary
{
  public:
    /// Throws RuleError.
    static RuleLibrary from_json(std::string_view text);
    /// Throws RuleFileError or RuleError.
    static RuleLibrary from_file(const std::string &path);
    /// The library compiled into the binary.
    static const RuleLibrary &shipped();
    /// Text of the shipped library file.
    static std::string_view shipped_json();

    /// Declared entries as JSON; byte-identical to a file in canonical form.
    const std::string &to_json() const noexcept { return json_; }

    /// Expanded rules in application order.
    const std::vector<RewriteRule> &rules() const noexcept { return rules_; }

    bool has(Builtin b) const;

  private:
    std::string json_;
    std::vector<RewriteRule> rules_;
};

} // namespace stmtsim
