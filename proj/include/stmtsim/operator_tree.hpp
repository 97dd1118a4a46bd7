#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace stmtsim {

/// Suffix carried by every internal (operator) label.
inline constexpr std::string_view kSlot = "<SLOT>";

/// Labeled, ordered operator tree. Internal labels end in `<SLOT>`; leaves
/// never do.
struct OperatorTree
{
    std::string label;
    std::vector<OperatorTree> children;

    OperatorTree() = default;
    explicit OperatorTree(std::string label_) : label(std::move(label_)) {}
    OperatorTree(std::string label_, std::vector<OperatorTree> children_)
        : label(std::move(label_)), children(std::move(children_))
    {}

    bool is_leaf() const noexcept { return children.empty(); }

    friend bool operator==(const OperatorTree &, const OperatorTree &) = default;
    friend bool operator<(const OperatorTree &a, const OperatorTree &b)
    {
        if (a.label != b.label)
            return a.label < b.label;
        return std::lexicographical_compare(a.children.begin(), a.children.end(), b.children.begin(),
                                            b.children.end());
    }
};

/// Leaf with the given label.
inline OperatorTree leaf(std::string label) { return OperatorTree(std::move(label)); }

/// Internal node `<op><SLOT>` over the given children.
OperatorTree node(std::string_view op, std::vector<OperatorTree> children);

/// Label without the `<SLOT>` suffix.
std::string_view head_of(std::string_view label);

bool has_slot(std::string_view label);

/// Number of nodes.
std::size_t tree_size(const OperatorTree &t);

/// Checks the label/placeholder invariant on every node.
bool is_well_formed(const OperatorTree &t);

/// Child-index path from the root; the empty path addresses the root.
using NodePath = std::vector<std::size_t>;

/// Subtree at `path`, or nullptr when the path leaves the tree.
const OperatorTree *subtree_at(const OperatorTree &t, const NodePath &path);
OperatorTree *subtree_at(OperatorTree &t, const NodePath &path);

/// All node paths in preorder.
std::vector<NodePath> preorder_paths(const OperatorTree &t);

/// "/0/2" style rendering; "/" for the root.
std::string path_to_string(const NodePath &path);

/// True for operator, binder and other built-in heads; false for named
/// functions such as `f` or `Real.log`.
bool is_symbolic_head(std::string_view head);

/// True for ∀ ∃ ∃! fun ∑ ∏ nodes (layout [names..., domain, body]) and let
/// nodes (layout [name, value, body]).
bool is_binding_node(const OperatorTree &t);

/// Leaf names bound by a binding node.
std::vector<std::string> bound_names(const OperatorTree &t);

/// Leaf labels occurring free (not captured by an enclosing binder). Numerals
/// are included; callers filter when needed.
std::set<std::string> free_leaves(const OperatorTree &t);

bool occurs_free(const OperatorTree &t, std::string_view name);

/// Capture-avoiding replacement of free occurrences of leaf `name` by
/// `replacement`. Binders that would capture a free leaf of the replacement
/// are renamed.
OperatorTree substitute(const OperatorTree &t, std::string_view name, const OperatorTree &replacement);

/// Canonical JSON: {"label": ..., "children": [...]}, compact, UTF-8.
std::string to_json(const OperatorTree &t);
OperatorTree tree_from_json(std::string_view json);

/// Compact s-expression: leaves print their label, internal nodes print
/// `(head child...)`. Used as the canonical key in search and in rule files.
std::string to_sexpr(const OperatorTree &t);

/// Canonical statement-language text that re-parses to the same tree.
std::string render_text(const OperatorTree &t);

} // namespace stmtsim
