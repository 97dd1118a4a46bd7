#include "edit_script_builder.hpp"

#include <json.hpp>

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace stmtsim {

namespace detail {

namespace {

struct WorkNode
{
    int id;
    std::string label;
    std::vector<WorkNode> kids;
};

WorkNode work_tree(const IndexedTree &t, int v)
{
    WorkNode w{v, t.nodes[v]->label, {}};
    for (int c : t.children[v])
        w.kids.push_back(work_tree(t, c));
    return w;
}

bool find_path(const std::vector<WorkNode> &forest, int id, NodePath &path)
{
    for (std::size_t i = 0; i < forest.size(); ++i) {
        path.push_back(i);
        if (forest[i].id == id || find_path(forest[i].kids, id, path))
            return true;
        path.pop_back();
    }
    return false;
}

struct Removal
{
    NodePath node;
    std::string label;
    std::size_t span;
};

/// Deletes the given nodes (postorder ids) from a forest, one at a time,
/// recording where each one sat.
std::vector<Removal> remove_nodes(std::vector<WorkNode> forest, const std::vector<int> &ids)
{
    std::vector<Removal> out;
    for (int id : ids) {
        NodePath path;
        if (!find_path(forest, id, path))
            throw std::logic_error("edit script: node vanished");
        std::vector<WorkNode> *siblings = &forest;
        for (std::size_t k = 0; k + 1 < path.size(); ++k)
            siblings = &(*siblings)[path[k]].kids;
        const std::size_t idx = path.back();
        WorkNode gone = std::move((*siblings)[idx]);
        siblings->erase(siblings->begin() + static_cast<std::ptrdiff_t>(idx));
        siblings->insert(siblings->begin() + static_cast<std::ptrdiff_t>(idx),
                         std::make_move_iterator(gone.kids.begin()), std::make_move_iterator(gone.kids.end()));
        out.push_back({path, gone.label, gone.kids.size()});
    }
    return out;
}

NodePath original_path(const IndexedTree &t, int v)
{
    NodePath rev;
    while (t.parent[v] >= 0) {
        const auto &sibs = t.children[t.parent[v]];
        rev.push_back(static_cast<std::size_t>(std::find(sibs.begin(), sibs.end(), v) - sibs.begin()));
        v = t.parent[v];
    }
    rev.push_back(0);
    std::reverse(rev.begin(), rev.end());
    return rev;
}

} // namespace

EditScript script_from_mapping(const IndexedTree &a, const IndexedTree &b,
                               const std::vector<std::pair<int, int>> &mapping)
{
    EditScript script;
    std::vector<bool> mapped_a(a.nodes.size(), false), mapped_b(b.nodes.size(), false);
    for (auto [i, j] : mapping) {
        mapped_a[i] = true;
        mapped_b[j] = true;
        if (a.nodes[i]->label != b.nodes[j]->label)
            script.push_back({EditOp::Kind::Relabel, original_path(a, i), b.nodes[j]->label, 0, 0});
    }
    std::vector<int> del_a, del_b;
    for (int i = 0; i < static_cast<int>(a.nodes.size()); ++i)
        if (!mapped_a[i])
            del_a.push_back(i);
    for (int j = 0; j < static_cast<int>(b.nodes.size()); ++j)
        if (!mapped_b[j])
            del_b.push_back(j);

    const int root_a = static_cast<int>(a.nodes.size()) - 1;
    const int root_b = static_cast<int>(b.nodes.size()) - 1;
    for (auto &r : remove_nodes({work_tree(a, root_a)}, del_a))
        script.push_back({EditOp::Kind::Delete, std::move(r.node), {}, 0, 0});
    auto removed_b = remove_nodes({work_tree(b, root_b)}, del_b);
    for (auto it = removed_b.rbegin(); it != removed_b.rend(); ++it) {
        NodePath parent(it->node.begin(), it->node.end() - 1);
        script.push_back({EditOp::Kind::Insert, std::move(parent), it->label, it->node.back(), it->span});
    }
    return script;
}

} // namespace detail

namespace {

std::vector<OperatorTree> &siblings_of(std::vector<OperatorTree> &forest, const NodePath &parent)
{
    std::vector<OperatorTree> *cur = &forest;
    for (std::size_t i : parent) {
        if (i >= cur->size())
            throw std::invalid_argument("edit script path " + path_to_string(parent) + " leaves the forest");
        cur = &(*cur)[i].children;
    }
    return *cur;
}

} // namespace

OperatorTree apply_script(const OperatorTree &t1, const EditScript &script)
{
    std::vector<OperatorTree> forest{t1};
    for (const auto &op : script) {
        switch (op.kind) {
        case EditOp::Kind::Relabel:
        case EditOp::Kind::Delete: {
            if (op.path.empty())
                throw std::invalid_argument("edit script: empty node path");
            NodePath parent(op.path.begin(), op.path.end() - 1);
            auto &sibs = siblings_of(forest, parent);
            const std::size_t idx = op.path.back();
            if (idx >= sibs.size())
                throw std::invalid_argument("edit script path " + path_to_string(op.path) + " leaves the forest");
            if (op.kind == EditOp::Kind::Relabel) {
                sibs[idx].label = op.label;
            } else {
                OperatorTree gone = std::move(sibs[idx]);
                sibs.erase(sibs.begin() + static_cast<std::ptrdiff_t>(idx));
                sibs.insert(sibs.begin() + static_cast<std::ptrdiff_t>(idx),
                            std::make_move_iterator(gone.children.begin()),
                            std::make_move_iterator(gone.children.end()));
            }
            break;
        }
        case EditOp::Kind::Insert: {
            auto &sibs = siblings_of(forest, op.path);
            if (op.child_index + op.span > sibs.size())
                throw std::invalid_argument("edit script insert span exceeds the children at "
                                            + path_to_string(op.path));
            auto first = sibs.begin() + static_cast<std::ptrdiff_t>(op.child_index);
            auto last = first + static_cast<std::ptrdiff_t>(op.span);
            OperatorTree fresh(op.label, std::vector<OperatorTree>(std::make_move_iterator(first),
                                                                   std::make_move_iterator(last)));
            first = sibs.erase(first, last);
            sibs.insert(first, std::move(fresh));
            break;
        }
        }
    }
    if (forest.size() != 1)
        throw std::invalid_argument("edit script leaves " + std::to_string(forest.size()) + " trees");
    return std::move(forest[0]);
}

Rational script_cost(const EditScript &script, const EditCosts &costs)
{
    Rational total = 0;
    for (const auto &op : script) {
        switch (op.kind) {
        case EditOp::Kind::Delete: total += costs.delete_cost(); break;
        case EditOp::Kind::Insert: total += costs.insert_cost(); break;
        case EditOp::Kind::Relabel: total += costs.relabel_cost(); break;
        }
    }
    return total;
}

std::string script_to_json(const EditScript &script)
{
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto &op : script) {
        nlohmann::ordered_json j;
        switch (op.kind) {
        case EditOp::Kind::Delete:
            j["op"] = "delete";
            j["path"] = op.path;
            break;
        case EditOp::Kind::Relabel:
            j["op"] = "relabel";
            j["path"] = op.path;
            j["label"] = op.label;
            break;
        case EditOp::Kind::Insert:
            j["op"] = "insert";
            j["parent"] = op.path;
            j["index"] = op.child_index;
            j["span"] = op.span;
            j["label"] = op.label;
            break;
        }
        arr.push_back(std::move(j));
    }
    return arr.dump();
}

} // namespace stmtsim
