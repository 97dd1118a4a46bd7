#include "stmtsim/operator_tree.hpp"

#include "stmtsim/operator_table.hpp"

#include <json.hpp>

#include <stdexcept>

namespace stmtsim {

OperatorTree node(std::string_view op, std::vector<OperatorTree> children)
{
    return OperatorTree(std::string(op) + std::string(kSlot), std::move(children));
}

bool has_slot(std::string_view label) { return label.ends_with(kSlot); }

std::string_view head_of(std::string_view label)
{
    if (has_slot(label))
        label.remove_suffix(kSlot.size());
    return label;
}

std::size_t tree_size(const OperatorTree &t)
{
    std::size_t n = 1;
    for (const auto &c : t.children)
        n += tree_size(c);
    return n;
}

bool is_well_formed(const OperatorTree &t)
{
    if (t.label.empty() || head_of(t.label).empty())
        return false;
    if (t.children.empty() == has_slot(t.label))
        return false;
    for (const auto &c : t.children)
        if (!is_well_formed(c))
            return false;
    return true;
}

const OperatorTree *subtree_at(const OperatorTree &t, const NodePath &path)
{
    const OperatorTree *cur = &t;
    for (std::size_t i : path) {
        if (i >= cur->children.size())
            return nullptr;
        cur = &cur->children[i];
    }
    return cur;
}

OperatorTree *subtree_at(OperatorTree &t, const NodePath &path)
{
    return const_cast<OperatorTree *>(subtree_at(static_cast<const OperatorTree &>(t), path));
}

namespace {

void collect_paths(const OperatorTree &t, NodePath &cur, std::vector<NodePath> &out)
{
    out.push_back(cur);
    for (std::size_t i = 0; i < t.children.size(); ++i) {
        cur.push_back(i);
        collect_paths(t.children[i], cur, out);
        cur.pop_back();
    }
}


} // namespace

std::vector<NodePath> preorder_paths(const OperatorTree &t)
{
    std::vector<NodePath> out;
    NodePath cur;
    collect_paths(t, cur, out);
    return out;
}

std::string path_to_string(const NodePath &path)
{
    if (path.empty())
        return "/";
    std::string s;
    for (std::size_t i : path)
        s += "/" + std::to_string(i);
    return s;
}

bool is_symbolic_head(std::string_view head)
{
    return infix_info(head).has_value() || prefix_operand_power(head).has_value() || is_binder_operator(head)
        || head == "let" || head == "⁻¹" || head.starts_with('.') || head == ":" || head == "app" || head == "⟨⟩";
}

bool is_binding_node(const OperatorTree &t)
{
    if (t.children.size() < 3)
        return false;
    std::string_view h = head_of(t.label);
    if (!has_slot(t.label))
        return false;
    if (h == "let")
        return t.children[0].is_leaf();
    if (!is_binder_operator(h))
        return false;
    for (std::size_t i = 0; i + 2 < t.children.size(); ++i)
        if (!t.children[i].is_leaf())
            return false;
    return true;
}

std::vector<std::string> bound_names(const OperatorTree &t)
{
    std::vector<std::string> names;
    if (!is_binding_node(t))
        return names;
    for (std::size_t i = 0; i + 2 < t.children.size(); ++i)
        names.push_back(t.children[i].label);
    return names;
}

namespace {

void free_leaves_into(const OperatorTree &t, std::set<std::string> &bound, std::set<std::string> &out)
{
    if (t.is_leaf()) {
        if (!bound.contains(t.label))
            out.insert(t.label);
        return;
    }
    std::string_view h = head_of(t.label);
    if (!is_symbolic_head(h) && !bound.contains(std::string(h)))
        out.insert(std::string(h));
    if (is_binding_node(t)) {
        const std::size_t n = t.children.size();
        free_leaves_into(t.children[n - 2], bound, out);
        std::vector<std::string> added;
        for (const auto &name : bound_names(t))
            if (bound.insert(name).second)
                added.push_back(name);
        free_leaves_into(t.children[n - 1], bound, out);
        for (const auto &name : added)
            bound.erase(name);
        return;
    }
    for (const auto &c : t.children)
        free_leaves_into(c, bound, out);
}

std::string fresh_name(const std::string &base, const std::set<std::string> &avoid)
{
    std::string candidate = base + "'";
    while (avoid.contains(candidate))
        candidate += "'";
    return candidate;
}

OperatorTree substitute_impl(const OperatorTree &t, std::string_view name, const OperatorTree &rep,
                             const std::set<std::string> &rep_free)
{
    if (t.is_leaf())
        return t.label == name ? rep : t;

    OperatorTree out;
    std::string_view h = head_of(t.label);
    if (is_binding_node(t)) {
        const std::size_t n = t.children.size();
        out.label = t.label;
        out.children = t.children;
        out.children[n - 2] = substitute_impl(t.children[n - 2], name, rep, rep_free);
        auto names = bound_names(t);
        bool shadowed = false;
        for (const auto &b : names)
            shadowed |= (b == name);
        if (shadowed)
            return out;
        OperatorTree body = t.children[n - 1];
        if (!occurs_free(body, name))
            return out;
        for (std::size_t i = 0; i + 2 < n; ++i) {
            if (!rep_free.contains(names[i]))
                continue;
            std::set<std::string> avoid = rep_free;
            for (const auto &f : free_leaves(body))
                avoid.insert(f);
            for (const auto &b : names)
                avoid.insert(b);
            std::string renamed = fresh_name(names[i], avoid);
            body = substitute(body, names[i], leaf(renamed));
            out.children[i] = leaf(renamed);
            names[i] = renamed;
        }
        out.children[n - 1] = substitute_impl(body, name, rep, rep_free);
        return out;
    }

    std::vector<OperatorTree> kids;
    kids.reserve(t.children.size());
    for (const auto &c : t.children)
        kids.push_back(substitute_impl(c, name, rep, rep_free));
    if (!is_symbolic_head(h) && h == name) {
        if (rep.is_leaf())
            return OperatorTree(rep.label + std::string(kSlot), std::move(kids));
        kids.insert(kids.begin(), rep);
        return node("app", std::move(kids));
    }
    return OperatorTree(t.label, std::move(kids));
}

} // namespace

std::set<std::string> free_leaves(const OperatorTree &t)
{
    std::set<std::string> bound, out;
    free_leaves_into(t, bound, out);
    return out;
}

bool occurs_free(const OperatorTree &t, std::string_view name)
{
    return free_leaves(t).contains(std::string(name));
}

OperatorTree substitute(const OperatorTree &t, std::string_view name, const OperatorTree &replacement)
{
    return substitute_impl(t, name, replacement, free_leaves(replacement));
}

// ----- serialization ------------------------------------------------------

namespace {

nlohmann::ordered_json to_json_value(const OperatorTree &t)
{
    nlohmann::ordered_json j;
    j["label"] = t.label;
    j["children"] = nlohmann::ordered_json::array();
    for (const auto &c : t.children)
        j["children"].push_back(to_json_value(c));
    return j;
}

OperatorTree from_json_value(const nlohmann::json &j)
{
    if (!j.is_object() || !j.contains("label") || !j["label"].is_string())
        throw std::invalid_argument("operator tree JSON needs a string \"label\"");
    OperatorTree t(j["label"].get<std::string>());
    if (j.contains("children")) {
        if (!j["children"].is_array())
            throw std::invalid_argument("operator tree \"children\" must be an array");
        for (const auto &c : j["children"])
            t.children.push_back(from_json_value(c));
    }
    return t;
}

void sexpr_into(const OperatorTree &t, std::string &out)
{
    if (t.is_leaf()) {
        out += t.label;
        return;
    }
    out += '(';
    out += head_of(t.label);
    for (const auto &c : t.children) {
        out += ' ';
        sexpr_into(c, out);
    }
    out += ')';
}

} // namespace

std::string to_json(const OperatorTree &t)
{
    return to_json_value(t).dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::strict);
}

OperatorTree tree_from_json(std::string_view json)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json);
    } catch (const nlohmann::json::parse_error &e) {
        throw std::invalid_argument(std::string("malformed operator tree JSON: ") + e.what());
    }
    return from_json_value(j);
}

std::string to_sexpr(const OperatorTree &t)
{
    std::string out;
    sexpr_into(t, out);
    return out;
}

} // namespace stmtsim
