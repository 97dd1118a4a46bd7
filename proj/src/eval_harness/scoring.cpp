#include "stmtsim/scoring.hpp"

#include "stmtsim/lexer.hpp"
#include "stmtsim/opt_builder.hpp"
#include "stmtsim/parser.hpp"
#include "stmtsim/ted.hpp"

#include <json.hpp>

#include <atomic>
#include <thread>

namespace stmtsim {

std::optional<ScoreMetric> parse_metric(std::string_view text)
{
    if (text == "ted")
        return ScoreMetric::Ted;
    if (text == "transted")
        return ScoreMetric::TransTed;
    if (text == "external")
        return ScoreMetric::External;
    return std::nullopt;
}

std::string metric_name(ScoreMetric metric)
{
    switch (metric) {
    case ScoreMetric::Ted: return "ted";
    case ScoreMetric::TransTed: return "transted";
    case ScoreMetric::External: return "external";
    }
    return "unknown";
}

std::map<std::string, double> parse_external_scores(std::string_view text)
{
    std::map<std::string, double> out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos)
            continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error &e) {
            throw FormatError(line_no, std::string("invalid JSON: ") + e.what());
        }
        if (!j.is_object() || !j.contains("id") || !j["id"].is_string() || !j.contains("score")
            || !j["score"].is_number())
            throw FormatError(line_no, "expected {\"id\": string, \"score\": number}");
        const auto id = j["id"].get<std::string>();
        if (!out.emplace(id, j["score"].get<double>()).second)
            throw DuplicateIdError(line_no, id);
    }
    return out;
}

std::map<std::string, double> load_external_scores(const std::string &path)
{
    return parse_external_scores(read_file(path));
}

namespace {

ScoreEntry score_ted(const BenchmarkRecord &r)
{
    ScoreEntry e;
    OperatorTree left, right;
    try {
        left = statement_opt(r.label_stmt);
        right = statement_opt(r.pred_stmt);
    } catch (const ParseError &) {
        e.degraded = true;
    } catch (const LexError &) {
        e.degraded = true;
    }
    if (e.degraded) {
        left = token_level_tree(r.label_stmt);
        right = token_level_tree(r.pred_stmt);
    }
    e.score = ted_similarity(left, right);
    e.proved_equal = left == right;
    return e;
}

ScoreEntry score_one(const BenchmarkRecord &r, const ScoringOptions &opt, const RuleLibrary &rules)
{
    ScoreEntry e;
    try {
        switch (opt.metric) {
        case ScoreMetric::Ted:
            e = score_ted(r);
            break;
        case ScoreMetric::TransTed: {
            auto res = transted_text(r.label_stmt, r.pred_stmt, opt.budget, rules);
            e.score = res.similarity;
            e.degraded = res.degraded;
            e.proved_equal = res.proved_equal;
            break;
        }
        case ScoreMetric::External: {
            auto it = opt.external->find(r.id);
            if (it == opt.external->end())
                e.error = "no external score for this id";
            else
                e.score = it->second;
            break;
        }
        }
    } catch (const std::exception &ex) {
        e.score.reset();
        e.error = ex.what();
    }
    e.id = r.id;
    return e;
}

} // namespace

std::vector<ScoreEntry> score_dataset(const std::vector<BenchmarkRecord> &records, const ScoringOptions &options)
{
    if (options.metric == ScoreMetric::External && options.external == nullptr)
        throw std::invalid_argument("external metric needs a scores table");
    if (options.metric == ScoreMetric::TransTed)
        options.budget.validate();
    const RuleLibrary &rules = options.rules ? *options.rules : RuleLibrary::shipped();

    std::vector<ScoreEntry> out(records.size());
    const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(records.size())));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < records.size(); i = next++)
            out[i] = score_one(records[i], options, rules);
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned k = 0; k < jobs; ++k)
            pool.emplace_back(worker);
    }
    return out;
}

} // namespace stmtsim
