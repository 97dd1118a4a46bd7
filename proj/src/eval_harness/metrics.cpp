#include "stmtsim/metrics.hpp"

#include "stmtsim/rational.hpp"

#include <algorithm>
#include <limits>

namespace stmtsim {

MetricsReport compute_metrics(const ConfusionMatrix &cm)
{
    const std::size_t total = cm.total();
    if (total == 0)
        throw std::invalid_argument("confusion matrix is empty");
    auto q = [](std::size_t num, std::size_t den) {
        return Rational(BigInt(num), BigInt(den));
    };
    MetricsReport r;
    r.cm = cm;
    if (cm.tp + cm.fp > 0)
        r.precision = to_double(q(cm.tp, cm.tp + cm.fp));
    if (cm.tp + cm.fn > 0)
        r.recall = to_double(q(cm.tp, cm.tp + cm.fn));
    const Rational p_o = q(cm.tp + cm.tn, total);
    const BigInt chance = BigInt(cm.tp + cm.fp) * (cm.tp + cm.fn) + BigInt(cm.tn + cm.fn) * (cm.tn + cm.fp);
    const Rational p_e(chance, BigInt(total) * total);
    r.accuracy = to_double(p_o);
    r.kappa = p_e == 1 ? 0.0 : to_double((p_o - p_e) / (1 - p_e));
    return r;
}

void require_defined(const MetricsReport &report)
{
    if (!report.precision)
        throw DegenerateError("precision undefined: no positive predictions");
    if (!report.recall)
        throw DegenerateError("recall undefined: no positive truths");
}

ConfusionMatrix confusion_at(const std::vector<double> &scores, const std::vector<bool> &truths, double threshold)
{
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const bool predicted = scores[i] >= threshold;
        if (predicted)
            ++(truths[i] ? cm.tp : cm.fp);
        else
            ++(truths[i] ? cm.fn : cm.tn);
    }
    return cm;
}

SweepResult threshold_sweep(const std::vector<double> &scores, const std::vector<bool> &truths)
{
    if (scores.empty() || scores.size() != truths.size())
        throw std::invalid_argument("scores and truths must be nonempty and of equal length");
    std::vector<double> distinct = scores;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    std::vector<double> thresholds{-std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i + 1 < distinct.size(); ++i)
    {
        const double mid = distinct[i] + (distinct[i + 1] - distinct[i]) / 2;
        // adjacent doubles have no midpoint; the upper score splits the same way
        thresholds.push_back(mid > distinct[i] ? mid : distinct[i + 1]);
    }
    thresholds.push_back(std::numeric_limits<double>::infinity());

    SweepResult out;
    for (double t : thresholds)
        out.rows.push_back({t, compute_metrics(confusion_at(scores, truths, t))});

    const bool mixed = std::find(truths.begin(), truths.end(), !truths.front()) != truths.end();
    std::size_t best_acc = 0, best_kappa = 0;
    for (std::size_t i = 1; i < out.rows.size(); ++i) {
        if (out.rows[i].metrics.accuracy >= out.rows[best_acc].metrics.accuracy)
            best_acc = i;
        if (out.rows[i].metrics.kappa >= out.rows[best_kappa].metrics.kappa)
            best_kappa = i;
    }
    out.best_by_accuracy = best_acc;
    if (mixed)
        out.best_by_kappa = best_kappa;
    return out;
}

} // namespace stmtsim
