#include "stmtsim/ted.hpp"

#include "edit_script_builder.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace stmtsim {

EditCosts::EditCosts(Rational delete_cost, Rational insert_cost, Rational relabel_cost)
    : delete_(std::move(delete_cost)), insert_(std::move(insert_cost)), relabel_(std::move(relabel_cost))
{
    if (delete_ < 0 || insert_ < 0 || relabel_ < 0)
        throw std::invalid_argument("edit costs must be non-negative");
    if (delete_ != insert_)
        throw std::invalid_argument("delete and insert costs must be equal");
}

namespace detail {

namespace {

using Cost = std::int64_t;

struct IntCosts
{
    Cost del, ins, rel;
    BigInt scale; // distance = dp value / scale
};

IntCosts scale_costs(const EditCosts &costs)
{
    BigInt scale = lcm(lcm(denominator(costs.delete_cost()), denominator(costs.insert_cost())),
                       denominator(costs.relabel_cost()));
    auto scaled = [&](const Rational &r) {
        BigInt v = numerator(r) * (scale / denominator(r));
        if (v > (BigInt(1) << 40))
            throw std::overflow_error("edit costs too large for exact evaluation");
        return v.convert_to<Cost>();
    };
    return {scaled(costs.delete_cost()), scaled(costs.insert_cost()), scaled(costs.relabel_cost()), scale};
}

} // namespace

IndexedTree::IndexedTree(const OperatorTree &root, LabelTable &labels)
{
    build(root, labels, -1);
    std::vector<bool> seen(nodes.size(), false);
    // keyroots: highest node for each distinct leftmost leaf
    for (int i = static_cast<int>(nodes.size()) - 1; i >= 0; --i) {
        if (!seen[lmd[i]]) {
            seen[lmd[i]] = true;
            keyroots.push_back(i);
        }
    }
    std::sort(keyroots.begin(), keyroots.end());
}

int IndexedTree::build(const OperatorTree &t, LabelTable &labels, int parent_slot)
{
    int first_leaf = -1;
    std::vector<int> kids;
    for (const auto &c : t.children) {
        int child = build(c, labels, -1);
        kids.push_back(child);
        if (first_leaf < 0)
            first_leaf = lmd[child];
    }
    int id = static_cast<int>(nodes.size());
    nodes.push_back(&t);
    auto [it, inserted] = labels.try_emplace(t.label, static_cast<int>(labels.size()));
    label.push_back(it->second);
    lmd.push_back(first_leaf < 0 ? id : first_leaf);
    parent.push_back(parent_slot);
    for (int k : kids)
        parent[k] = id;
    children.push_back(std::move(kids));
    return id;
}

namespace {

template <typename Cost>
class ZhangShasha
{
  public:
    struct Costs
    {
        Cost del, ins, rel;
    };

    ZhangShasha(const IndexedTree &a, const IndexedTree &b, Costs c)
        : a_(a), b_(b), c_(c), n1_(a.nodes.size()), n2_(b.nodes.size()), td_(n1_ * n2_, 0),
          fd_((n1_ + 1) * (n2_ + 1), 0)
    {}

    Cost run()
    {
        for (int i : a_.keyroots)
            for (int j : b_.keyroots)
                forest<true>(i, j);
        return td_[n1_ * n2_ - 1];
    }

    /// Optimal mapping as (postorder index in a, postorder index in b).
    std::vector<std::pair<int, int>> mapping()
    {
        std::vector<std::pair<int, int>> out;
        std::vector<std::pair<int, int>> stack{{static_cast<int>(n1_) - 1, static_cast<int>(n2_) - 1}};
        while (!stack.empty()) {
            auto [i, j] = stack.back();
            stack.pop_back();
            forest<false>(i, j);
            const int ioff = a_.lmd[i] - 1;
            const int joff = b_.lmd[j] - 1;
            int x = i - ioff;
            int y = j - joff;
            while (x > 0 || y > 0) {
                const int X = x + ioff;
                const int Y = y + joff;
                if (x > 0 && fd(x, y) == fd(x - 1, y) + c_.del) {
                    --x;
                } else if (y > 0 && fd(x, y) == fd(x, y - 1) + c_.ins) {
                    --y;
                } else if (a_.lmd[X] == a_.lmd[i] && b_.lmd[Y] == b_.lmd[j]) {
                    out.emplace_back(X, Y);
                    --x;
                    --y;
                } else {
                    stack.emplace_back(X, Y);
                    x = a_.lmd[X] - 1 - ioff;
                    y = b_.lmd[Y] - 1 - joff;
                }
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

  private:
    Cost &fd(int x, int y) { return fd_[static_cast<std::size_t>(x) * (n2_ + 1) + y]; }

    template <bool Store>
    void forest(int i, int j)
    {
        const int *lmd1 = a_.lmd.data();
        const int *lmd2 = b_.lmd.data();
        const int *lab1 = a_.label.data();
        const int *lab2 = b_.label.data();
        const std::size_t stride = n2_ + 1;
        Cost *fdp = fd_.data();
        Cost *tdp = td_.data();
        const int li = lmd1[i], lj = lmd2[j];
        const int ioff = li - 1;
        const int joff = lj - 1;
        const int m = i - ioff;
        const int n = j - joff;
        fdp[0] = 0;
        for (int x = 1; x <= m; ++x)
            fdp[x * stride] = fdp[(x - 1) * stride] + c_.del;
        for (int y = 1; y <= n; ++y)
            fdp[y] = fdp[y - 1] + c_.ins;
        for (int x = 1; x <= m; ++x) {
            const int X = x + ioff;
            const bool x_tree = lmd1[X] == li;
            const int p = lmd1[X] - 1 - ioff;
            Cost *row = fdp + x * stride;
            const Cost *prev = row - stride;
            const Cost *prow = fdp + p * stride;
            Cost *tdrow = tdp + static_cast<std::size_t>(X) * n2_;
            const int lx = lab1[X];
            for (int y = 1; y <= n; ++y) {
                const int Y = y + joff;
                Cost best = std::min(prev[y] + c_.del, row[y - 1] + c_.ins);
                if (x_tree && lmd2[Y] == lj) {
                    best = std::min(best, prev[y - 1] + (lx == lab2[Y] ? Cost(0) : c_.rel));
                    if constexpr (Store)
                        tdrow[Y] = best;
                } else {
                    const int q = lmd2[Y] - 1 - joff;
                    best = std::min(best, prow[q] + tdrow[Y]);
                }
                row[y] = best;
            }
        }
    }

    const IndexedTree &a_;
    const IndexedTree &b_;
    Costs c_;
    std::size_t n1_, n2_;
    std::vector<Cost> td_;
    std::vector<Cost> fd_;
};

} // namespace

} // namespace detail

TedResult ted(const OperatorTree &t1, const OperatorTree &t2, const EditCosts &costs)
{
    detail::LabelTable labels;
    detail::IndexedTree a(t1, labels);
    detail::IndexedTree b(t2, labels);
    auto ic = detail::scale_costs(costs);
    detail::ZhangShasha<detail::Cost> zs(a, b, {ic.del, ic.ins, ic.rel});
    detail::Cost d = zs.run();
    TedResult result;
    result.distance = Rational(BigInt(d), ic.scale);
    result.script = detail::script_from_mapping(a, b, zs.mapping());
    return result;
}

Rational ted_distance(const OperatorTree &t1, const OperatorTree &t2, const EditCosts &costs)
{
    detail::LabelTable labels;
    detail::IndexedTree a(t1, labels);
    detail::IndexedTree b(t2, labels);
    auto ic = detail::scale_costs(costs);
    detail::Cost d = detail::ZhangShasha<detail::Cost>(a, b, {ic.del, ic.ins, ic.rel}).run();
    return Rational(BigInt(d), ic.scale);
}

std::size_t ted_unit(const OperatorTree &t1, const OperatorTree &t2)
{
    detail::LabelTable labels;
    detail::IndexedTree a(t1, labels);
    detail::IndexedTree b(t2, labels);
    return static_cast<std::size_t>(detail::ZhangShasha<std::int32_t>(a, b, {1, 1, 1}).run());
}

Rational similarity_from_distance(const Rational &distance, const OperatorTree &t1, const OperatorTree &t2)
{
    std::size_t denom = std::max(tree_size(t1), tree_size(t2));
    return Rational(1) - distance / Rational(denom);
}

double ted_similarity(const OperatorTree &t1, const OperatorTree &t2)
{
    return to_double(similarity_from_distance(Rational(ted_unit(t1, t2)), t1, t2));
}

} // namespace stmtsim
