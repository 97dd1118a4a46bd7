#include "stmtsim/cli.hpp"

#include "stmtsim/benchmark.hpp"
#include "stmtsim/lexer.hpp"
#include "stmtsim/metrics.hpp"
#include "stmtsim/opt_builder.hpp"
#include "stmtsim/parser.hpp"
#include "stmtsim/pseudometric.hpp"
#include "stmtsim/report.hpp"
#include "stmtsim/rules.hpp"
#include "stmtsim/scoring.hpp"
#include "stmtsim/ted.hpp"
#include "stmtsim/transted.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>

namespace stmtsim {

namespace {

using nlohmann::ordered_json;

class InputError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct BudgetFlags
{
    std::size_t max_nodes = SearchBudget{}.max_expanded_nodes;
    std::size_t max_depth = SearchBudget{}.max_depth;
    long long max_time_ms = 10000;
    bool no_time_limit = false;

    void add_to(CLI::App &cmd)
    {
        cmd.add_option("--max-nodes", max_nodes, "Expanded-node budget")->capture_default_str();
        cmd.add_option("--max-depth", max_depth, "Rewrite depth limit")->capture_default_str();
        cmd.add_option("--max-time-ms", max_time_ms, "Wall-clock limit in milliseconds")->capture_default_str();
        cmd.add_flag("--no-time-limit", no_time_limit, "Disable the wall-clock limit (reproducible runs)");
    }

    SearchBudget budget() const
    {
        SearchBudget b;
        b.max_expanded_nodes = max_nodes;
        b.max_depth = max_depth;
        if (no_time_limit)
            b.max_wall_time.reset();
        else
            b.max_wall_time = std::chrono::milliseconds(max_time_ms);
        b.validate();
        return b;
    }
};

std::string fixed2(double v) { return format_fixed2(v); }

std::string statement_source(const std::string &arg, bool from_file)
{
    return from_file ? read_file(arg) : arg;
}

RuleLibrary load_rules(const std::string &flag)
{
    std::string path = flag;
    if (path.empty()) {
        if (const char *env = std::getenv("STMTSIM_RULES"); env && *env)
            path = env;
    }
    return path.empty() ? RuleLibrary::shipped() : RuleLibrary::from_file(path);
}

void write_output(const std::string &path, const std::string &text, std::ostream &out)
{
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text) || !f.flush())
        throw IoError("cannot write " + path);
}

template <typename Error>
[[noreturn]] void rethrow_with_caret(const Error &e, const std::string &source)
{
    throw InputError(std::string("parse error: ") + e.what() + "\n" + caret_diagnostic(source, e.span()));
}

OperatorTree parse_or_explain(const std::string &source)
{
    try {
        return statement_opt(source);
    } catch (const ParseError &e) {
        rethrow_with_caret(e, source);
    } catch (const LexError &e) {
        rethrow_with_caret(e, source);
    }
}

int cmd_parse(const std::string &input, bool from_file, std::ostream &out)
{
    const auto source = statement_source(input, from_file);
    out << to_json(parse_or_explain(source)) << "\n";
    return kExitOk;
}

int cmd_ted(const std::string &a, const std::string &b, bool from_file, bool script, const std::string &format,
            std::ostream &out)
{
    const auto t1 = parse_or_explain(statement_source(a, from_file));
    const auto t2 = parse_or_explain(statement_source(b, from_file));
    auto result = ted(t1, t2);
    const double sim = to_double(similarity_from_distance(result.distance, t1, t2));
    if (format == "json") {
        ordered_json j;
        j["distance"] = to_string(result.distance);
        j["similarity"] = sim;
        j["similarity_2dp"] = fixed2(sim);
        j["sizes"] = {tree_size(t1), tree_size(t2)};
        if (script)
            j["script"] = ordered_json::parse(script_to_json(result.script));
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    out << "distance: " << to_string(result.distance) << "\n";
    out << "similarity: " << format_double(sim) << " (" << fixed2(sim) << ")\n";
    out << "sizes: " << tree_size(t1) << " " << tree_size(t2) << "\n";
    if (script)
        out << "script: " << script_to_json(result.script) << "\n";
    return kExitOk;
}

int cmd_transted(const std::string &a, const std::string &b, bool from_file, const BudgetFlags &flags,
                 const std::string &rules_path, const std::string &format, std::ostream &out)
{
    const auto budget = flags.budget();
    const auto rules = load_rules(rules_path);
    const auto result = transted_text(statement_source(a, from_file), statement_source(b, from_file), budget, rules);
    if (format == "json") {
        ordered_json j;
        j["distance"] = to_string(result.distance);
        j["similarity"] = result.similarity;
        j["similarity_2dp"] = fixed2(result.similarity);
        j["proved"] = result.proved_equal;
        j["initial_distance"] = to_string(result.initial_distance);
        j["expanded"] = result.expanded;
        j["degraded"] = result.degraded;
        ordered_json trace = ordered_json::array();
        for (const auto &s : result.trace)
            trace.push_back({{"rule", s.rule}, {"position", s.position}});
        j["trace"] = std::move(trace);
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    out << "distance: " << to_string(result.distance) << "\n";
    out << "similarity: " << format_double(result.similarity) << " (" << fixed2(result.similarity) << ")\n";
    out << "proved: " << (result.proved_equal ? "true" : "false") << "\n";
    out << "initial_distance: " << to_string(result.initial_distance) << "\n";
    out << "expanded: " << result.expanded << "\n";
    out << "degraded: " << (result.degraded ? "true" : "false") << "\n";
    out << "trace: [";
    for (std::size_t i = 0; i < result.trace.size(); ++i)
        out << (i ? ", " : "") << result.trace[i].rule << "@" << result.trace[i].position;
    out << "]\n";
    return kExitOk;
}

struct EvalFlags
{
    std::string benchmark;
    std::string metric = "transted";
    std::string policy = "strict";
    bool sweep = false;
    std::string out_path;
    std::string scores_path;
    unsigned jobs = 1;
    std::string format = "csv";
    std::string rules_path;
    BudgetFlags budget;
};

int cmd_eval(const EvalFlags &f, std::ostream &out, std::ostream &err)
{
    const auto metric = parse_metric(f.metric);
    if (!metric)
        throw InputError("unknown metric \"" + f.metric + "\" (ted, transted, external)");
    const auto policy = parse_policy(f.policy);
    if (!policy)
        throw InputError("unknown policy \"" + f.policy + "\" (strict, human_in_loop)");
    const auto format = parse_format(f.format);
    if (!format)
        throw InputError("unknown format \"" + f.format + "\" (csv, json)");
    if (*metric == ScoreMetric::External && f.scores_path.empty())
        throw InputError("--metric external needs --scores");
    if (f.jobs == 0)
        throw InputError("--jobs must be at least 1");

    ScoringOptions opt;
    opt.metric = *metric;
    opt.jobs = f.jobs;
    std::optional<RuleLibrary> rules;
    std::map<std::string, double> external;
    if (*metric == ScoreMetric::TransTed) {
        opt.budget = f.budget.budget();
        rules = load_rules(f.rules_path);
        opt.rules = &*rules;
    }
    const auto records = load_benchmark(f.benchmark);
    if (*metric == ScoreMetric::External) {
        external = load_external_scores(f.scores_path);
        opt.external = &external;
    }

    const auto entries = score_dataset(records, opt);
    std::vector<bool> truths;
    for (const auto &r : records)
        truths.push_back(binarize(r.annotation, *policy));
    std::size_t failures = 0;
    for (const auto &e : entries) {
        if (!e.score) {
            ++failures;
            err << "warning: " << e.id << ": " << e.error << "\n";
        }
    }

    std::string report;
    std::string summary;
    if (f.sweep) {
        std::vector<double> scores;
        std::vector<bool> scored_truths;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (entries[i].score) {
                scores.push_back(*entries[i].score);
                scored_truths.push_back(truths[i]);
            }
        }
        if (scores.empty())
            throw InputError("no record could be scored");
        const auto sweep = threshold_sweep(scores, scored_truths);
        report = emit_report(sweep, *format);
        auto best = [&](const char *name, const std::optional<std::size_t> &row) {
            if (!row)
                return std::string(name) + ": n/a\n";
            const auto &r = sweep.rows[*row];
            std::string t = std::isinf(r.threshold) ? (r.threshold < 0 ? "-inf" : "inf") : format_double(r.threshold);
            return std::string(name) + ": threshold " + t + ", accuracy " + format_double(r.metrics.accuracy) + " ("
                   + fixed2(r.metrics.accuracy * 100) + "%), kappa " + format_double(r.metrics.kappa) + " ("
                   + fixed2(r.metrics.kappa) + ")\n";
        };
        summary = best("best_by_kappa", sweep.best_by_kappa) + best("best_by_accuracy", sweep.best_by_accuracy);
    } else {
        report = emit_scores(entries, truths, *format);
    }
    write_output(f.out_path, report, out);
    if (!f.out_path.empty()) {
        out << "records: " << records.size() << ", scored: " << records.size() - failures << ", errors: " << failures
            << "\n"
            << summary;
    }
    return kExitOk;
}

int cmd_oracle(const std::string &path, std::ostream &out)
{
    FiniteInstance inst;
    try {
        inst = instance_from_json(read_file(path));
        inst.validate();
    } catch (const std::invalid_argument &e) {
        throw InputError(e.what());
    }
    const auto table = solve_max_pseudometric(inst);
    const auto report = verify_membership(inst, table);
    out << table_to_json(inst.points, table, &report);
    return kExitOk;
}

} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Statement similarity: operator trees, tree edit distance and rewrite-aware distance"};
    app.require_subcommand(1);

    std::string input, second, format = "text", rules_path;
    bool from_file = false, script = false;
    BudgetFlags budget;

    auto *parse = app.add_subcommand("parse", "Print the operator tree of a statement as JSON");
    parse->add_option("statement", input, "Statement text (or path with --from-file)")->required();
    parse->add_flag("--from-file", from_file, "Read the statement from a file");

    auto *ted_cmd = app.add_subcommand("ted", "Tree edit distance and similarity of two statements");
    ted_cmd->add_option("label", input, "First statement")->required();
    ted_cmd->add_option("prediction", second, "Second statement")->required();
    ted_cmd->add_flag("--from-file", from_file, "Arguments are file paths");
    ted_cmd->add_flag("--script", script, "Print an optimal edit script");
    ted_cmd->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

    auto *trans = app.add_subcommand("transted", "Rewrite-aware distance and similarity of two statements");
    trans->add_option("label", input, "First statement")->required();
    trans->add_option("prediction", second, "Second statement")->required();
    trans->add_flag("--from-file", from_file, "Arguments are file paths");
    trans->add_option("--rules", rules_path, "Rule library file (default: $STMTSIM_RULES or the shipped library)");
    trans->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    budget.add_to(*trans);

    EvalFlags ev;
    auto *eval = app.add_subcommand("eval", "Score a benchmark and report classification metrics");
    eval->add_option("benchmark", ev.benchmark, "JSON Lines benchmark file")->required();
    eval->add_option("--metric", ev.metric, "ted, transted or external")->capture_default_str();
    eval->add_option("--policy", ev.policy, "strict or human_in_loop")->capture_default_str();
    eval->add_flag("--sweep", ev.sweep, "Report metrics at every decision threshold");
    eval->add_option("--out", ev.out_path, "Write the report to this file");
    eval->add_option("--scores", ev.scores_path, "External scores file (JSON Lines of id and score)");
    eval->add_option("--jobs", ev.jobs, "Worker threads")->capture_default_str();
    eval->add_option("--format", ev.format, "csv or json")->capture_default_str();
    eval->add_option("--rules", ev.rules_path, "Rule library file");
    ev.budget.add_to(*eval);

    auto *oracle = app.add_subcommand("oracle", "Largest pseudometric of a finite instance");
    oracle->add_option("instance", input, "Instance JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitInput;
    }

    try {
        if (*parse)
            return cmd_parse(input, from_file, out);
        if (*ted_cmd)
            return cmd_ted(input, second, from_file, script, format, out);
        if (*trans)
            return cmd_transted(input, second, from_file, budget, rules_path, format, out);
        if (*eval)
            return cmd_eval(ev, out, err);
        if (*oracle)
            return cmd_oracle(input, out);
    } catch (const BudgetError &e) {
        err << "budget error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const IoError &e) {
        err << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const RuleFileError &e) {
        err << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const InputError &e) {
        err << e.what() << "\n";
        return kExitInput;
    } catch (const FormatError &e) {
        err << "format error: " << e.what() << "\n";
        return kExitInput;
    } catch (const DuplicateIdError &e) {
        err << "format error: " << e.what() << "\n";
        return kExitInput;
    } catch (const InstanceFormatError &e) {
        err << "format error: " << e.what() << "\n";
        return kExitInput;
    } catch (const RuleError &e) {
        err << "rule error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}

} // namespace stmtsim
