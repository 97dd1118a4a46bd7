#include "stmtsim/normalize.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>

namespace stmtsim {

namespace {

bool is_integer(const Rational &r) { return denominator(r) == 1; }

std::optional<Rational> fold_binary(std::string_view op, const Rational &a, const Rational &b)
{
    if (!is_integer(a) || !is_integer(b))
        return std::nullopt;
    if (op == "+")
        return a + b;
    if (op == "*")
        return a * b;
    if (op == "-") {
        if (a >= b || a < 0 || b < 0)
            return a - b;
        return std::nullopt;
    }
    const BigInt x = numerator(a), y = numerator(b);
    if (op == "/") {
        if (y == 0 || x % y != 0)
            return std::nullopt;
        return Rational(x / y);
    }
    if (op == "%") {
        if (x < 0 || y <= 0)
            return std::nullopt;
        return Rational(x % y);
    }
    if (op == "^") {
        if (y < 0 || y > 256)
            return std::nullopt;
        const unsigned e = y.convert_to<unsigned>();
        if (msb(abs(x) + 1) * e > 4096)
            return std::nullopt;
        return Rational(boost::multiprecision::pow(x, e));
    }
    return std::nullopt;
}

} // namespace

std::optional<Rational> numeral_value(const OperatorTree &t)
{
    if (t.is_leaf()) {
        if (t.label.empty() || !std::isdigit(static_cast<unsigned char>(t.label[0])))
            return std::nullopt;
        return parse_rational(t.label);
    }
    if (t.label == "-<SLOT>" && t.children.size() == 1)
        if (auto v = numeral_value(t.children[0]))
            return -*v;
    return std::nullopt;
}

OperatorTree integer_tree(const Rational &value)
{
    if (value < 0)
        return node("-", {leaf(to_string(-value))});
    return leaf(to_string(value));
}

OperatorTree const_fold(const OperatorTree &t)
{
    if (t.is_leaf())
        return t;
    std::vector<OperatorTree> kids;
    kids.reserve(t.children.size());
    for (const auto &c : t.children)
        kids.push_back(const_fold(c));
    const std::string_view op = head_of(t.label);
    if (kids.size() == 2) {
        auto a = numeral_value(kids[0]);
        auto b = numeral_value(kids[1]);
        if (a && b)
            if (auto r = fold_binary(op, *a, *b))
                return integer_tree(*r);
    }
    if (op == "-" && kids.size() == 1) {
        auto v = numeral_value(kids[0]);
        // -n with n a plain nonzero numeral is already canonical
        if (v && is_integer(*v) && !(kids[0].is_leaf() && *v != 0))
            return integer_tree(-*v);
    }
    return OperatorTree(t.label, std::move(kids));
}

OperatorTree cast_collapse(const OperatorTree &t)
{
    if (t.is_leaf())
        return t;
    std::vector<OperatorTree> kids;
    kids.reserve(t.children.size());
    for (const auto &c : t.children)
        kids.push_back(cast_collapse(c));
    if (t.label == "↑<SLOT>" && kids.size() == 1) {
        const OperatorTree &inner = kids[0];
        if (numeral_value(inner) || inner.label == "↑<SLOT>")
            return inner;
    }
    return OperatorTree(t.label, std::move(kids));
}

} // namespace stmtsim
