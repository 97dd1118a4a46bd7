#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace stmtsim {

struct ConfusionMatrix
{
    std::size_t tp = 0, tn = 0, fp = 0, fn = 0;

    std::size_t total() const noexcept { return tp + tn + fp + fn; }
    friend bool operator==(const ConfusionMatrix &, const ConfusionMatrix &) = default;
};

/// Fractions in [0, 1]; precision or recall is absent when its denominator
/// is zero.
struct MetricsReport
{
    ConfusionMatrix cm;
    std::optional<double> precision;
    std::optional<double> recall;
    double accuracy = 0;
    double kappa = 0;

    bool degenerate() const noexcept { return !precision || !recall; }
};

/// Raised by callers that need every field defined.
class DegenerateError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

/// Two-class Cohen's kappa with chance agreement from the marginals; kappa is
/// 0 when chance agreement is 1. Throws std::invalid_argument on an empty
/// matrix.
MetricsReport compute_metrics(const ConfusionMatrix &cm);

/// Throws DegenerateError when precision or recall is undefined.
void require_defined(const MetricsReport &report);

ConfusionMatrix confusion_at(const std::vector<double> &scores, const std::vector<bool> &truths, double threshold);

struct SweepRow
{
    /// Predict true when score >= threshold. May be -inf or +inf.
    double threshold;
    MetricsReport metrics;
};

struct SweepResult
{
    std::vector<SweepRow> rows;
    /// Row indices; ties go to the larger threshold. Best-by-kappa is absent
    /// when every truth is the same.
    std::optional<std::size_t> best_by_kappa;
    std::optional<std::size_t> best_by_accuracy;
};

/// Thresholds: -inf, the midpoints of adjacent distinct scores, +inf.
/// Throws std::invalid_argument on empty or mismatched inputs.
SweepResult threshold_sweep(const std::vector<double> &scores, const std::vector<bool> &truths);

} // namespace stmtsim
