#pragma once

#include "stmtsim/operator_tree.hpp"
#include "stmtsim/rational.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace stmtsim {

/// Per-operation edit costs. Delete and insert must cost the same so that the
/// distance is symmetric.
class EditCosts
{
  public:
    /// Throws std::invalid_argument if a cost is negative or delete != insert.
    EditCosts(Rational delete_cost, Rational insert_cost, Rational relabel_cost);

    static EditCosts unit() { return EditCosts(1, 1, 1); }

    const Rational &delete_cost() const noexcept { return delete_; }
    const Rational &insert_cost() const noexcept { return insert_; }
    const Rational &relabel_cost() const noexcept { return relabel_; }

  private:
    Rational delete_;
    Rational insert_;
    Rational relabel_;
};

/// One edit operation. Paths are taken in the forest being edited: the first
/// index selects a top-level tree, so the original root is at {0}.
struct EditOp
{
    enum class Kind { Delete, Insert, Relabel };

    Kind kind;
    /// Delete/Relabel: the node. Insert: the parent of the new node ({} for
    /// the top level).
    NodePath path;
    /// Insert/Relabel: the new label.
    std::string label;
    /// Insert: position of the new node among the parent's children.
    std::size_t child_index = 0;
    /// Insert: how many consecutive children, starting at child_index, the
    /// new node adopts.
    std::size_t span = 0;

    friend bool operator==(const EditOp &, const EditOp &) = default;
};

using EditScript = std::vector<EditOp>;

struct TedResult
{
    Rational distance;
    EditScript script;
};

/// Exact ordered tree edit distance (Zhang-Shasha) with an optimal script.
TedResult ted(const OperatorTree &t1, const OperatorTree &t2, const EditCosts &costs = EditCosts::unit());

/// Distance only.
Rational ted_distance(const OperatorTree &t1, const OperatorTree &t2, const EditCosts &costs = EditCosts::unit());

/// Unit-cost distance on the integer fast path; the search heuristic.
std::size_t ted_unit(const OperatorTree &t1, const OperatorTree &t2);

/// 1 - distance / max(|t1|, |t2|) as an exact rational. Not clamped: the
/// value is negative when the distance exceeds the larger tree's size.
Rational similarity_from_distance(const Rational &distance, const OperatorTree &t1, const OperatorTree &t2);

/// Unit-cost TED similarity, converted to double.
double ted_similarity(const OperatorTree &t1, const OperatorTree &t2);

/// Applies the script to t1. Throws std::invalid_argument when an operation
/// addresses a missing node or the result is not a single tree.
OperatorTree apply_script(const OperatorTree &t1, const EditScript &script);

/// Total cost of a script under the given costs.
Rational script_cost(const EditScript &script, const EditCosts &costs);

/// Machine-readable JSON array of operations.
std::string script_to_json(const EditScript &script);

} // namespace stmtsim
