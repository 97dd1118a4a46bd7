#pragma once

#include "stmtsim/ted.hpp"

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace stmtsim::detail {

using LabelTable = std::unordered_map<std::string, int>;

/// Postorder view of a tree with interned labels and leftmost-leaf indices.
struct IndexedTree
{
    IndexedTree(const OperatorTree &root, LabelTable &labels);

    std::vector<const OperatorTree *> nodes;
    std::vector<int> label;
    std::vector<int> lmd;
    std::vector<int> parent;
    std::vector<std::vector<int>> children;
    std::vector<int> keyroots;

  private:
    int build(const OperatorTree &t, LabelTable &labels, int parent_slot);
};

/// Relabels, then deletes of unmapped t1 nodes, then inserts of unmapped t2
/// nodes.
EditScript script_from_mapping(const IndexedTree &a, const IndexedTree &b,
                               const std::vector<std::pair<int, int>> &mapping);

} // namespace stmtsim::detail
