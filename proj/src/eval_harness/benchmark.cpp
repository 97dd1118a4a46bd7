#include "stmtsim/benchmark.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <unordered_map>

namespace stmtsim {

std::optional<AnnotationLabel> parse_annotation(std::string_view text)
{
    if (text.size() != 1)
        return std::nullopt;
    switch (text[0]) {
    case 'a': return AnnotationLabel::A;
    case 'b': return AnnotationLabel::B;
    case 'c': return AnnotationLabel::C;
    case 'd': return AnnotationLabel::D;
    case 'e': return AnnotationLabel::E;
    default: return std::nullopt;
    }
}

char annotation_char(AnnotationLabel label) { return static_cast<char>('a' + static_cast<int>(label)); }

std::optional<BinarizationPolicy> parse_policy(std::string_view text)
{
    if (text == "strict")
        return BinarizationPolicy::Strict;
    if (text == "human_in_loop")
        return BinarizationPolicy::HumanInLoop;
    return std::nullopt;
}

std::string policy_name(BinarizationPolicy policy)
{
    return policy == BinarizationPolicy::Strict ? "strict" : "human_in_loop";
}

bool binarize(AnnotationLabel label, BinarizationPolicy policy)
{
    if (policy == BinarizationPolicy::Strict)
        return label == AnnotationLabel::A || label == AnnotationLabel::B;
    return label != AnnotationLabel::E;
}

FormatError::FormatError(std::size_t line, const std::string &message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line)
{}

DuplicateIdError::DuplicateIdError(std::size_t line, const std::string &id)
    : std::runtime_error("line " + std::to_string(line) + ": duplicate id \"" + id + "\""), id_(id)
{}

std::vector<BenchmarkRecord> parse_benchmark(std::string_view text)
{
    std::vector<BenchmarkRecord> out;
    std::unordered_map<std::string, std::size_t> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line.find_first_not_of(" \t") == std::string_view::npos)
            continue;

        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error &e) {
            throw FormatError(line_no, std::string("invalid JSON: ") + e.what());
        }
        if (!j.is_object())
            throw FormatError(line_no, "record must be a JSON object");
        auto field = [&](const char *name) {
            if (!j.contains(name))
                throw FormatError(line_no, std::string("missing \"") + name + "\"");
            if (!j[name].is_string())
                throw FormatError(line_no, std::string("\"") + name + "\" must be a string");
            return j[name].get<std::string>();
        };
        BenchmarkRecord r;
        r.id = field("id");
        r.source = field("source");
        r.nl = field("nl");
        r.label_stmt = field("label_stmt");
        r.pred_stmt = field("pred_stmt");
        const std::string ann = field("annotation");
        auto label = parse_annotation(ann);
        if (!label)
            throw FormatError(line_no, "annotation must be one of a, b, c, d, e; got \"" + ann + "\"");
        r.annotation = *label;
        if (r.label_stmt.empty() || r.pred_stmt.empty())
            throw FormatError(line_no, "statements must be nonempty");
        if (!seen.emplace(r.id, line_no).second)
            throw DuplicateIdError(line_no, r.id);
        out.push_back(std::move(r));
    }
    return out;
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        throw IoError("cannot read " + path);
    return ss.str();
}

std::vector<BenchmarkRecord> load_benchmark(const std::string &path) { return parse_benchmark(read_file(path)); }

} // namespace stmtsim
