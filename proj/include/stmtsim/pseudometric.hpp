#pragma once

#include "stmtsim/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stmtsim {

/// Non-negative rational or +infinity.
class ExtRational
{
  public:
    ExtRational() = default;
    ExtRational(Rational v);
    ExtRational(int v) : ExtRational(Rational(v)) {}

    static ExtRational infinity();

    bool is_infinite() const noexcept { return infinite_; }
    /// Precondition: finite.
    const Rational &value() const;

    friend ExtRational operator+(const ExtRational &a, const ExtRational &b);
    friend bool operator==(const ExtRational &a, const ExtRational &b);
    friend bool operator<(const ExtRational &a, const ExtRational &b);
    friend bool operator<=(const ExtRational &a, const ExtRational &b) { return !(b < a); }

    /// "inf", "3", "7/2".
    std::string to_string() const;

  private:
    bool infinite_ = false;
    Rational value_ = 0;
};

inline const ExtRational &min(const ExtRational &a, const ExtRational &b) { return b < a ? b : a; }

/// Square table over points 0..n-1.
class DistanceTable
{
  public:
    DistanceTable() = default;
    DistanceTable(std::size_t n, ExtRational fill);

    std::size_t size() const noexcept { return n_; }
    ExtRational &at(std::size_t i, std::size_t j) { return cells_.at(i * n_ + j); }
    const ExtRational &at(std::size_t i, std::size_t j) const { return cells_.at(i * n_ + j); }

    /// True when every entry of this table is <= the matching entry of other.
    bool dominated_by(const DistanceTable &other) const;

    friend bool operator==(const DistanceTable &, const DistanceTable &) = default;

  private:
    std::size_t n_ = 0;
    std::vector<ExtRational> cells_;
};

using PseudometricTable = DistanceTable;

/// ((x, y), (u, v)): the distance of (x, y) may not exceed that of (u, v).
using PairConstraint = std::pair<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>>;

struct FiniteInstance
{
    std::vector<std::string> points;
    DistanceTable bound;
    std::vector<PairConstraint> constraints;

    /// Throws std::invalid_argument on a size mismatch, a negative bound or
    /// a constraint endpoint outside the point set.
    void validate() const;
};

/// All-pairs shortest paths; unreachable pairs are infinite. Weights must
/// be symmetric and non-negative.
PseudometricTable shortest_path_pseudometric(const DistanceTable &weights);

/// Largest table that is a pseudometric, lies below the bound and respects
/// every constraint. Computed as the fixed point of repeated identity,
/// symmetry, triangle and constraint reductions.
PseudometricTable solve_max_pseudometric(const FiniteInstance &instance);

struct Violation
{
    enum class Kind { Identity, Symmetry, Triangle, Bound, Constraint };

    Kind kind;
    /// Points involved: (x) for identity, (x, y) for symmetry and bound,
    /// (x, y, z) for the triangle, (x, y, u, v) for a constraint.
    std::vector<std::size_t> witness;

    friend bool operator==(const Violation &, const Violation &) = default;
};

std::string violation_kind_name(Violation::Kind kind);

/// Every violated membership condition; empty iff the candidate belongs to
/// the feasible family of the instance.
std::vector<Violation> verify_membership(const FiniteInstance &instance, const PseudometricTable &candidate);

class InstanceFormatError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// {"points": [...], "bound": [[...]], "constraints": [[[i, j], [k, l]], ...]}
/// with bounds given as numbers, "a/b" strings or "inf".
FiniteInstance instance_from_json(const std::string &text);
std::string instance_to_json(const FiniteInstance &instance);

/// {"points": [...], "distance": [[...]]}, plus "violations":
/// [{"kind": ..., "witness": [...]}, ...] when a report is given.
std::string table_to_json(const std::vector<std::string> &points, const PseudometricTable &table,
                          const std::vector<Violation> *violations = nullptr);

} // namespace stmtsim
