#pragma once

#include "stmtsim/metrics.hpp"
#include "stmtsim/scoring.hpp"

#include <string>

namespace stmtsim {

enum class ReportFormat { Csv, Json };

std::optional<ReportFormat> parse_format(std::string_view text);

/// CSV columns: threshold,tp,tn,fp,fn,precision,recall,accuracy,kappa.
/// Undefined values print as n/a; infinite thresholds as -inf/inf.
std::string emit_report(const SweepResult &sweep, ReportFormat format);

/// Single metrics row with an empty threshold cell.
std::string emit_report(const MetricsReport &metrics, ReportFormat format);

/// Reads emit_report(sweep, Json) output back.
SweepResult load_sweep_json(const std::string &text);

/// Per-record scores: id,truth,score,degraded,proved,error.
std::string emit_scores(const std::vector<ScoreEntry> &entries, const std::vector<bool> &truths, ReportFormat format);

} // namespace stmtsim
