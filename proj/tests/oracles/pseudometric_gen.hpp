#pragma once

#include "stmtsim/pseudometric.hpp"

#include <random>

namespace stmtsim::testing {

/// Up to max_points points, bounds from {0, 1/2, 1, ..., 6, inf}, up to
/// max_constraints random constraints.
inline FiniteInstance random_instance(std::mt19937_64 &rng, std::size_t max_points, std::size_t max_constraints)
{
    FiniteInstance inst;
    const std::size_t n = 1 + rng() % max_points;
    for (std::size_t i = 0; i < n; ++i)
        inst.points.push_back("p" + std::to_string(i));
    inst.bound = DistanceTable(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const auto r = rng() % 14;
            inst.bound.at(i, j) = r == 13 ? ExtRational::infinity() : ExtRational(Rational(static_cast<long>(r), 2));
        }
    }
    const std::size_t m = rng() % (max_constraints + 1);
    for (std::size_t k = 0; k < m; ++k)
        inst.constraints.push_back({{rng() % n, rng() % n}, {rng() % n, rng() % n}});
    return inst;
}

/// A member of the feasible family below `top`, built without the solver:
/// min(lambda * top, c) keeps every pseudometric axiom, every bound and
/// every constraint of a feasible `top`.
inline DistanceTable shrink_feasible(std::mt19937_64 &rng, const DistanceTable &top)
{
    const Rational lambda(static_cast<long>(rng() % 5), 4);
    const ExtRational cap = rng() % 3 == 0 ? ExtRational::infinity() : ExtRational(Rational(static_cast<long>(rng() % 13), 2));
    DistanceTable out = top;
    for (std::size_t i = 0; i < top.size(); ++i) {
        for (std::size_t j = 0; j < top.size(); ++j) {
            const ExtRational &v = top.at(i, j);
            out.at(i, j) = min(v.is_infinite() ? v : ExtRational(v.value() * lambda), cap);
        }
    }
    return out;
}

/// top + mu * cut(S): larger than top on every pair separated by S.
inline DistanceTable raise_on_cut(std::mt19937_64 &rng, const DistanceTable &top)
{
    const std::size_t n = top.size();
    std::vector<bool> side(n);
    for (std::size_t i = 0; i < n; ++i)
        side[i] = rng() % 2;
    const ExtRational mu(Rational(1 + static_cast<long>(rng() % 4), 2));
    DistanceTable out = top;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (side[i] != side[j])
                out.at(i, j) = top.at(i, j) + mu;
    return out;
}

} // namespace stmtsim::testing
