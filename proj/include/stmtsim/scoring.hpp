#pragma once

#include "stmtsim/benchmark.hpp"
#include "stmtsim/rules.hpp"
#include "stmtsim/transted.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace stmtsim {

enum class ScoreMetric { Ted, TransTed, External };

std::optional<ScoreMetric> parse_metric(std::string_view text);
std::string metric_name(ScoreMetric metric);

struct ScoreEntry
{
    std::string id;
    std::optional<double> score;
    /// A statement failed to parse and was scored on token trees.
    bool degraded = false;
    bool proved_equal = false;
    /// Set when the record could not be scored.
    std::string error;
};

struct ScoringOptions
{
    ScoreMetric metric = ScoreMetric::TransTed;
    SearchBudget budget;
    const RuleLibrary *rules = nullptr; // shipped library when null
    /// Required for ScoreMetric::External.
    const std::map<std::string, double> *external = nullptr;
    unsigned jobs = 1;
};

/// JSON Lines of {"id": ..., "score": ...}.
std::map<std::string, double> parse_external_scores(std::string_view text);
std::map<std::string, double> load_external_scores(const std::string &path);

/// One entry per record in input order. Failures are recorded per entry and
/// do not stop the batch. Output does not depend on the job count.
std::vector<ScoreEntry> score_dataset(const std::vector<BenchmarkRecord> &records, const ScoringOptions &options);

} // namespace stmtsim
