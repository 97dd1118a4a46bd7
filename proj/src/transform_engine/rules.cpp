#include "stmtsim/rules.hpp"

#include "stmtsim/pattern.hpp"

#include <json.hpp>

#include <array>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

namespace stmtsim {

namespace {

constexpr std::array<std::pair<Builtin, std::string_view>, 9> kBuiltins{{
    {Builtin::CongrArg, "congr-arg"},
    {Builtin::CongrFun, "congr-fun"},
    {Builtin::ForallCongr, "forall-congr"},
    {Builtin::ImpliesCongr, "implies-congr"},
    {Builtin::Ext, "ext"},
    {Builtin::ForallSwap, "forall-swap"},
    {Builtin::LetInline, "let-inline"},
    {Builtin::ConstFold, "const-fold"},
    {Builtin::CastCollapse, "cast-collapse"},
}};

Builtin builtin_by_name(std::string_view name)
{
    for (const auto &[b, n] : kBuiltins)
        if (n == name)
            return b;
    return Builtin::None;
}

OperatorTree replace_metavariable(const OperatorTree &t, std::string_view var, std::string_view op)
{
    if (t.is_leaf())
        return t.label == var ? leaf(std::string(op)) : t;
    std::vector<OperatorTree> kids;
    for (const auto &c : t.children)
        kids.push_back(replace_metavariable(c, var, op));
    if (head_of(t.label) == var)
        return node(op, std::move(kids));
    return OperatorTree(t.label, std::move(kids));
}

std::string string_field(const nlohmann::ordered_json &entry, const char *key, std::size_t index)
{
    const auto &v = entry.at(key);
    if (!v.is_string())
        throw RuleError("rule " + std::to_string(index) + ": \"" + key + "\" must be a string");
    return v.get<std::string>();
}

RewriteRule pattern_rule(const std::string &name, const OperatorTree &lhs, const OperatorTree &rhs, bool root_only)
{
    if (lhs.is_leaf() && is_metavariable(lhs.label))
        throw RuleError("rule " + name + ": lhs must not be a bare metavariable");
    const auto lhs_vars = metavariables(lhs);
    for (const auto &v : metavariables(rhs))
        if (!lhs_vars.contains(v))
            throw RuleError("rule " + name + ": rhs metavariable " + v + " does not occur in lhs");
    return RewriteRule{name, Builtin::None, lhs, rhs, root_only};
}

} // namespace

std::string_view builtin_name(Builtin b)
{
    for (const auto &[k, n] : kBuiltins)
        if (k == b)
            return n;
    return "";
}

RuleLibrary RuleLibrary::from_json(std::string_view text)
{
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw RuleError(std::string("malformed rule file: ") + e.what());
    }
    if (!doc.is_array())
        throw RuleError("rule file must be a JSON list");

    RuleLibrary lib;
    std::set<std::string> names;
    auto add = [&](RewriteRule r) {
        if (!names.insert(r.name).second)
            throw RuleError("duplicate rule name " + r.name);
        lib.rules_.push_back(std::move(r));
    };
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto &entry = doc[i];
        if (!entry.is_object() || !entry.contains("name"))
            throw RuleError("rule " + std::to_string(i) + ": expected an object with a name");
        for (const auto &[key, value] : entry.items())
            if (key != "name" && key != "lhs" && key != "rhs" && key != "guard" && key != "commutes")
                throw RuleError("rule " + std::to_string(i) + ": unknown field \"" + key + "\"");
        const std::string name = string_field(entry, "name", i);
        const Builtin builtin = builtin_by_name(name);
        if (builtin != Builtin::None) {
            if (entry.size() != 1)
                throw RuleError("builtin rule " + name + " takes no other fields");
            add(RewriteRule{name, builtin, {}, {}, builtin != Builtin::ForallSwap && builtin != Builtin::LetInline});
            continue;
        }
        if (!entry.contains("lhs") || !entry.contains("rhs"))
            throw RuleError("rule " + name + ": lhs and rhs are required");
        OperatorTree lhs, rhs;
        try {
            lhs = parse_sexpr(string_field(entry, "lhs", i));
            rhs = parse_sexpr(string_field(entry, "rhs", i));
        } catch (const PatternError &e) {
            throw RuleError("rule " + name + ": " + e.what());
        }
        bool root_only = false;
        if (entry.contains("guard")) {
            const std::string guard = string_field(entry, "guard", i);
            if (guard != "root")
                throw RuleError("rule " + name + ": unknown guard \"" + guard + "\"");
            root_only = true;
        }
        if (!entry.contains("commutes")) {
            add(pattern_rule(name, lhs, rhs, root_only));
            continue;
        }
        const auto &ops = entry["commutes"];
        if (!ops.is_array() || ops.empty())
            throw RuleError("rule " + name + ": \"commutes\" must be a nonempty list of operators");
        if (!metavariables(lhs).contains("?op"))
            throw RuleError("rule " + name + ": \"commutes\" needs ?op in lhs");
        for (const auto &op : ops) {
            if (!op.is_string())
                throw RuleError("rule " + name + ": operators must be strings");
            const std::string o = op.get<std::string>();
            add(pattern_rule(name + "(" + o + ")", replace_metavariable(lhs, "?op", o),
                             replace_metavariable(rhs, "?op", o), root_only));
        }
    }
    lib.json_ = doc.dump(2) + "\n";
    return lib;
}

RuleLibrary RuleLibrary::from_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw RuleFileError("cannot read rule file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

const RuleLibrary &RuleLibrary::shipped()
{
    static const RuleLibrary lib = from_json(shipped_json());
    return lib;
}

bool RuleLibrary::has(Builtin b) const
{
    for (const auto &r : rules_)
        if (r.builtin == b)
            return true;
    return false;
}

} // namespace stmtsim
