#include "stmtsim/report.hpp"

#include "stmtsim/rational.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>

namespace stmtsim {

namespace {

using nlohmann::ordered_json;

const char *kCsvHeader = "threshold,tp,tn,fp,fn,precision,recall,accuracy,kappa\n";

std::string threshold_text(double t)
{
    if (std::isinf(t))
        return t < 0 ? "-inf" : "inf";
    return format_double(t);
}

std::string optional_text(const std::optional<double> &v) { return v ? format_double(*v) : "n/a"; }

std::string csv_row(const std::string &threshold, const MetricsReport &m)
{
    return threshold + "," + std::to_string(m.cm.tp) + "," + std::to_string(m.cm.tn) + "," + std::to_string(m.cm.fp)
           + "," + std::to_string(m.cm.fn) + "," + optional_text(m.precision) + "," + optional_text(m.recall) + ","
           + format_double(m.accuracy) + "," + format_double(m.kappa) + "\n";
}

std::string csv_field(const std::string &s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

ordered_json threshold_json(double t)
{
    if (std::isinf(t))
        return t < 0 ? "-inf" : "inf";
    return t;
}

double threshold_from_json(const ordered_json &j)
{
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "-inf")
            return -std::numeric_limits<double>::infinity();
        if (s == "inf")
            return std::numeric_limits<double>::infinity();
        throw std::invalid_argument("bad threshold \"" + s + "\"");
    }
    return j.get<double>();
}

ordered_json optional_json(const std::optional<double> &v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json metrics_json(const MetricsReport &m)
{
    ordered_json j;
    j["tp"] = m.cm.tp;
    j["tn"] = m.cm.tn;
    j["fp"] = m.cm.fp;
    j["fn"] = m.cm.fn;
    j["precision"] = optional_json(m.precision);
    j["recall"] = optional_json(m.recall);
    j["accuracy"] = m.accuracy;
    j["kappa"] = m.kappa;
    return j;
}

ordered_json best_json(const SweepResult &s, const std::optional<std::size_t> &row)
{
    if (!row)
        return nullptr;
    return {{"row", *row}, {"threshold", threshold_json(s.rows[*row].threshold)}};
}

std::optional<std::size_t> best_from_json(const ordered_json &j)
{
    if (j.is_null())
        return std::nullopt;
    return j.at("row").get<std::size_t>();
}

} // namespace

std::optional<ReportFormat> parse_format(std::string_view text)
{
    if (text == "csv")
        return ReportFormat::Csv;
    if (text == "json")
        return ReportFormat::Json;
    return std::nullopt;
}

std::string emit_report(const SweepResult &sweep, ReportFormat format)
{
    if (format == ReportFormat::Csv) {
        std::string out = kCsvHeader;
        for (const auto &row : sweep.rows)
            out += csv_row(threshold_text(row.threshold), row.metrics);
        return out;
    }
    ordered_json doc;
    ordered_json rows = ordered_json::array();
    for (const auto &row : sweep.rows) {
        ordered_json r;
        r["threshold"] = threshold_json(row.threshold);
        r.update(metrics_json(row.metrics));
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    doc["best_by_kappa"] = best_json(sweep, sweep.best_by_kappa);
    doc["best_by_accuracy"] = best_json(sweep, sweep.best_by_accuracy);
    return doc.dump(2) + "\n";
}

std::string emit_report(const MetricsReport &metrics, ReportFormat format)
{
    if (format == ReportFormat::Csv)
        return std::string(kCsvHeader) + csv_row("", metrics);
    return metrics_json(metrics).dump(2) + "\n";
}

SweepResult load_sweep_json(const std::string &text)
{
    const auto doc = ordered_json::parse(text);
    SweepResult out;
    for (const auto &r : doc.at("rows")) {
        MetricsReport m;
        m.cm = {r.at("tp").get<std::size_t>(), r.at("tn").get<std::size_t>(), r.at("fp").get<std::size_t>(),
                r.at("fn").get<std::size_t>()};
        if (!r.at("precision").is_null())
            m.precision = r["precision"].get<double>();
        if (!r.at("recall").is_null())
            m.recall = r["recall"].get<double>();
        m.accuracy = r.at("accuracy").get<double>();
        m.kappa = r.at("kappa").get<double>();
        out.rows.push_back({threshold_from_json(r.at("threshold")), m});
    }
    out.best_by_kappa = best_from_json(doc.at("best_by_kappa"));
    out.best_by_accuracy = best_from_json(doc.at("best_by_accuracy"));
    return out;
}

std::string emit_scores(const std::vector<ScoreEntry> &entries, const std::vector<bool> &truths, ReportFormat format)
{
    if (format == ReportFormat::Csv) {
        std::string out = "id,truth,score,degraded,proved,error\n";
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const auto &e = entries[i];
            out += csv_field(e.id) + "," + (truths.at(i) ? "true" : "false") + "," + optional_text(e.score) + ","
                   + (e.degraded ? "true" : "false") + "," + (e.proved_equal ? "true" : "false") + ","
                   + csv_field(e.error) + "\n";
        }
        return out;
    }
    ordered_json arr = ordered_json::array();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto &e = entries[i];
        ordered_json j;
        j["id"] = e.id;
        j["truth"] = truths.at(i);
        j["score"] = optional_json(e.score);
        j["degraded"] = e.degraded;
        j["proved"] = e.proved_equal;
        j["error"] = e.error.empty() ? ordered_json(nullptr) : ordered_json(e.error);
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

} // namespace stmtsim
