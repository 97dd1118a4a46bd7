#pragma once

#include <optional>
#include <string_view>

namespace stmtsim {

/// Binding powers for the statement grammar. Ordering follows Lean 4:
/// application binds tightest, `^` is the tightest infix operator, `→` and
/// `↔` are the loosest.
namespace prec {
inline constexpr int kIff = 20;
inline constexpr int kArrow = 25;
inline constexpr int kOr = 30;
inline constexpr int kAnd = 35;
inline constexpr int kNot = 40;
inline constexpr int kCompare = 50;
inline constexpr int kAdd = 65;
inline constexpr int kBigOpBody = 67;
inline constexpr int kMul = 70;
inline constexpr int kSmul = 73;
inline constexpr int kPow = 75;
inline constexpr int kNeg = 75;
inline constexpr int kCompose = 90;
inline constexpr int kApp = 1024;
} // namespace prec

enum class Assoc { Left, Right, None };

struct InfixInfo
{
    int power;
    Assoc assoc;
};

/// Infix operators, keyed by canonical spelling.
constexpr std::optional<InfixInfo> infix_info(std::string_view op)
{
    if (op == "↔") return InfixInfo{prec::kIff, Assoc::None};
    if (op == "→") return InfixInfo{prec::kArrow, Assoc::Right};
    if (op == "∨") return InfixInfo{prec::kOr, Assoc::Right};
    if (op == "∧" || op == "×") return InfixInfo{prec::kAnd, Assoc::Right};
    if (op == "=" || op == "≠" || op == "<" || op == ">" || op == "≤" || op == "≥" || op == "∈"
        || op == "∉" || op == "∣" || op == "⊆" || op == "⊂")
        return InfixInfo{prec::kCompare, Assoc::None};
    if (op == "+" || op == "-" || op == "∪") return InfixInfo{prec::kAdd, Assoc::Left};
    if (op == "*" || op == "/" || op == "%" || op == "∩") return InfixInfo{prec::kMul, Assoc::Left};
    if (op == "•") return InfixInfo{prec::kSmul, Assoc::Right};
    if (op == "^") return InfixInfo{prec::kPow, Assoc::Right};
    if (op == "∘") return InfixInfo{prec::kCompose, Assoc::Right};
    return std::nullopt;
}

/// Prefix operators and the binding power of their operand.
constexpr std::optional<int> prefix_operand_power(std::string_view op)
{
    if (op == "¬") return prec::kNot;
    if (op == "-") return prec::kNeg;
    if (op == "↑") return prec::kApp + 1;
    return std::nullopt;
}

/// Binder notations whose operator-tree layout is [names..., type, body].
constexpr bool is_binder_operator(std::string_view op)
{
    return op == "∀" || op == "∃" || op == "∃!" || op == "fun" || op == "∑" || op == "∏";
}

/// Relations accepted after a bound name, as in `∀ x ∈ s, p x`.
constexpr bool is_binder_predicate(std::string_view op)
{
    return op == "∈" || op == "∉" || op == ">" || op == "<" || op == "≥" || op == "≤" || op == "≠"
        || op == "⊆" || op == "⊂";
}

} // namespace stmtsim
