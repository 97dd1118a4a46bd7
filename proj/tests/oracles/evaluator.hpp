#pragma once

// Small reference semantics for operator trees: integers/rationals, booleans
// and pairs, quantifiers over a finite integer range. Used to spot-check that
// rewrites preserve meaning.

#include "stmtsim/normalize.hpp"
#include "stmtsim/operator_tree.hpp"
#include "stmtsim/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace stmtsim::testing {

struct Value
{
    enum class Kind { Num, Bool, Pair } kind = Kind::Num;
    Rational num = 0;
    bool truth = false;
    std::vector<Value> items;

    static Value number(Rational r) { return {Kind::Num, std::move(r), false, {}}; }
    static Value boolean(bool b) { return {Kind::Bool, 0, b, {}}; }
    static Value pair(Value a, Value b) { return {Kind::Pair, 0, false, {std::move(a), std::move(b)}}; }

    friend bool operator==(const Value &, const Value &) = default;
};

using Env = std::map<std::string, Value>;

class Evaluator
{
  public:
    /// Quantifiers range over [-range, range].
    explicit Evaluator(int range = 2) : range_(range) {}

    std::optional<Value> eval(const OperatorTree &t, const Env &env) const
    {
        if (t.is_leaf()) {
            if (auto v = numeral_value(t))
                return Value::number(*v);
            if (t.label == "True")
                return Value::boolean(true);
            if (t.label == "False")
                return Value::boolean(false);
            auto it = env.find(t.label);
            if (it == env.end())
                return std::nullopt;
            return it->second;
        }
        const std::string h(head_of(t.label));
        const auto &c = t.children;
        if (h == "∀" || h == "∃") {
            if (!is_binding_node(t))
                return std::nullopt;
            return quantify(h == "∀", t, 0, env);
        }
        if (h == "let") {
            auto v = eval(c[1], env);
            if (!v)
                return std::nullopt;
            Env inner = env;
            inner[c[0].label] = *v;
            return eval(c[2], inner);
        }
        std::vector<Value> args;
        for (const auto &k : c) {
            auto v = eval(k, env);
            if (!v)
                return std::nullopt;
            args.push_back(*v);
        }
        return apply(h, args);
    }

  private:
    std::optional<Value> quantify(bool all, const OperatorTree &t, std::size_t name_index, const Env &env) const
    {
        const std::size_t names = t.children.size() - 2;
        if (name_index == names)
            return eval(t.children.back(), env);
        for (int k = -range_; k <= range_; ++k) {
            Env inner = env;
            inner[t.children[name_index].label] = Value::number(k);
            auto v = quantify(all, t, name_index + 1, inner);
            if (!v || v->kind != Value::Kind::Bool)
                return std::nullopt;
            if (all && !v->truth)
                return Value::boolean(false);
            if (!all && v->truth)
                return Value::boolean(true);
        }
        return Value::boolean(all);
    }

    static std::optional<Value> apply(const std::string &h, const std::vector<Value> &a)
    {
        auto nums = [&]() {
            for (const auto &v : a)
                if (v.kind != Value::Kind::Num)
                    return false;
            return true;
        };
        auto bools = [&]() {
            for (const auto &v : a)
                if (v.kind != Value::Kind::Bool)
                    return false;
            return true;
        };
        if (a.size() == 2 && (h == "=" || h == "≠")) {
            if (a[0].kind != a[1].kind)
                return std::nullopt;
            return Value::boolean((a[0] == a[1]) == (h == "="));
        }
        if (a.size() == 2 && nums()) {
            const Rational &x = a[0].num, &y = a[1].num;
            if (h == "+")
                return Value::number(x + y);
            if (h == "-")
                return Value::number(x - y);
            if (h == "*")
                return Value::number(x * y);
            if (h == "/") {
                if (y == 0)
                    return std::nullopt;
                return Value::number(x / y);
            }
            if (h == "<")
                return Value::boolean(x < y);
            if (h == "≤")
                return Value::boolean(x <= y);
            if (h == ">")
                return Value::boolean(x > y);
            if (h == "≥")
                return Value::boolean(x >= y);
            if (h == "^") {
                if (denominator(y) != 1 || y < 0 || y > 8)
                    return std::nullopt;
                Rational r = 1;
                for (int i = 0; i < static_cast<int>(y); ++i)
                    r *= x;
                return Value::number(r);
            }
        }
        if (a.size() == 2 && bools()) {
            const bool p = a[0].truth, q = a[1].truth;
            if (h == "∧")
                return Value::boolean(p && q);
            if (h == "∨")
                return Value::boolean(p || q);
            if (h == "→")
                return Value::boolean(!p || q);
            if (h == "↔")
                return Value::boolean(p == q);
        }
        if (a.size() == 1) {
            if (h == "¬" && bools())
                return Value::boolean(!a[0].truth);
            if (h == "-" && nums())
                return Value::number(-a[0].num);
            if (h == "↑")
                return a[0];
            if (h == "IsRegular" && nums())
                return Value::boolean(a[0].num != 0);
            if (h == "Irrational" && nums())
                return Value::boolean(a[0].num > 0);
            if (h == "f" && nums())
                return Value::number(2 * a[0].num + 1);
            if (h == "g" && nums())
                return Value::number(a[0].num * a[0].num);
            if ((h == ".1" || h == ".2") && a[0].kind == Value::Kind::Pair)
                return a[0].items[h == ".1" ? 0 : 1];
        }
        if (h == "Prod.mk" && a.size() == 2)
            return Value::pair(a[0], a[1]);
        return std::nullopt;
    }

    int range_;
};

} // namespace stmtsim::testing
