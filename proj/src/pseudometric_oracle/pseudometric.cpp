#include "stmtsim/pseudometric.hpp"

#include <cassert>

namespace stmtsim {

ExtRational::ExtRational(Rational v) : value_(std::move(v))
{
    if (value_ < 0)
        throw std::invalid_argument("distances must be non-negative");
}

ExtRational ExtRational::infinity()
{
    ExtRational r;
    r.infinite_ = true;
    return r;
}

const Rational &ExtRational::value() const
{
    if (infinite_)
        throw std::logic_error("value of an infinite distance");
    return value_;
}

ExtRational operator+(const ExtRational &a, const ExtRational &b)
{
    if (a.infinite_ || b.infinite_)
        return ExtRational::infinity();
    return ExtRational(a.value_ + b.value_);
}

bool operator==(const ExtRational &a, const ExtRational &b)
{
    if (a.infinite_ || b.infinite_)
        return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
}

bool operator<(const ExtRational &a, const ExtRational &b)
{
    if (a.infinite_)
        return false;
    if (b.infinite_)
        return true;
    return a.value_ < b.value_;
}

std::string ExtRational::to_string() const { return infinite_ ? "inf" : stmtsim::to_string(value_); }

DistanceTable::DistanceTable(std::size_t n, ExtRational fill) : n_(n), cells_(n * n, fill) {}

bool DistanceTable::dominated_by(const DistanceTable &other) const
{
    if (n_ != other.n_)
        return false;
    for (std::size_t k = 0; k < cells_.size(); ++k)
        if (other.cells_[k] < cells_[k])
            return false;
    return true;
}

void FiniteInstance::validate() const
{
    const std::size_t n = points.size();
    if (bound.size() != n)
        throw std::invalid_argument("bound table size does not match the point count");
    for (const auto &[xy, uv] : constraints)
        if (xy.first >= n || xy.second >= n || uv.first >= n || uv.second >= n)
            throw std::invalid_argument("constraint endpoint outside the point set");
}

namespace {

// One full pass of the reductions; returns whether anything changed.
bool reduce_once(DistanceTable &d, const std::vector<PairConstraint> &constraints)
{
    const std::size_t n = d.size();
    bool changed = false;
    auto lower = [&](ExtRational &cell, const ExtRational &candidate) {
        if (candidate < cell) {
            cell = candidate;
            changed = true;
        }
    };
    for (std::size_t x = 0; x < n; ++x)
        lower(d.at(x, x), ExtRational(0));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            lower(d.at(x, y), d.at(y, x));
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t z = 0; z < n; ++z)
                lower(d.at(x, z), d.at(x, y) + d.at(y, z));
    for (const auto &[xy, uv] : constraints)
        lower(d.at(xy.first, xy.second), d.at(uv.first, uv.second));
    return changed;
}

} // namespace

PseudometricTable shortest_path_pseudometric(const DistanceTable &weights)
{
    const std::size_t n = weights.size();
    DistanceTable d = weights;
    for (std::size_t x = 0; x < n; ++x)
        d.at(x, x) = 0;
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t z = 0; z < n; ++z)
                d.at(x, z) = min(d.at(x, z), d.at(x, y) + d.at(y, z));
    return d;
}

PseudometricTable solve_max_pseudometric(const FiniteInstance &instance)
{
    instance.validate();
    const std::size_t n = instance.points.size();
    DistanceTable d = instance.bound;
    const std::size_t max_passes = n * n * (instance.constraints.size() + n) + 2;
    std::size_t passes = 0;
    bool changed = true;
    while (changed) {
        changed = reduce_once(d, instance.constraints);
        ++passes;
        if (passes > max_passes)
            throw std::logic_error("pseudometric reduction did not converge");
    }
    assert(verify_membership(instance, d).empty());
    return d;
}

std::string violation_kind_name(Violation::Kind kind)
{
    switch (kind) {
    case Violation::Kind::Identity: return "identity";
    case Violation::Kind::Symmetry: return "symmetry";
    case Violation::Kind::Triangle: return "triangle";
    case Violation::Kind::Bound: return "bound";
    case Violation::Kind::Constraint: return "constraint";
    }
    return "unknown";
}

std::vector<Violation> verify_membership(const FiniteInstance &instance, const PseudometricTable &d)
{
    instance.validate();
    const std::size_t n = instance.points.size();
    if (d.size() != n)
        throw std::invalid_argument("candidate table size does not match the point count");
    std::vector<Violation> out;
    for (std::size_t x = 0; x < n; ++x)
        if (!(d.at(x, x) == ExtRational(0)))
            out.push_back({Violation::Kind::Identity, {x}});
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y)
            if (!(d.at(x, y) == d.at(y, x)))
                out.push_back({Violation::Kind::Symmetry, {x, y}});
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                if (d.at(x, y) + d.at(y, z) < d.at(x, z))
                    out.push_back({Violation::Kind::Triangle, {x, y, z}});
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (instance.bound.at(x, y) < d.at(x, y))
                out.push_back({Violation::Kind::Bound, {x, y}});
    for (const auto &[xy, uv] : instance.constraints)
        if (d.at(uv.first, uv.second) < d.at(xy.first, xy.second))
            out.push_back({Violation::Kind::Constraint, {xy.first, xy.second, uv.first, uv.second}});
    return out;
}

} // namespace stmtsim
