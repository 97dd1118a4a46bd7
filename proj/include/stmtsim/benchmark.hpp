#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stmtsim {

/// Five-way annotation of a statement pair.
/// a: provable both ways, alike; b: provable both ways, unlike;
/// c: not provable, alike; d: not provable, alike up to minor slips;
/// e: not provable, unlike.
enum class AnnotationLabel { A, B, C, D, E };

std::optional<AnnotationLabel> parse_annotation(std::string_view text);
char annotation_char(AnnotationLabel label);

enum class BinarizationPolicy { Strict, HumanInLoop };

std::optional<BinarizationPolicy> parse_policy(std::string_view text);
std::string policy_name(BinarizationPolicy policy);

/// Strict accepts a and b; human_in_loop accepts a through d.
bool binarize(AnnotationLabel label, BinarizationPolicy policy);

struct BenchmarkRecord
{
    std::string id;
    std::string source;
    std::string nl;
    std::string label_stmt;
    std::string pred_stmt;
    AnnotationLabel annotation;
};

class FormatError : public std::runtime_error
{
  public:
    FormatError(std::size_t line, const std::string &message);
    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

class DuplicateIdError : public std::runtime_error
{
  public:
    DuplicateIdError(std::size_t line, const std::string &id);
    const std::string &id() const noexcept { return id_; }

  private:
    std::string id_;
};

/// The file could not be opened or read.
class IoError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// One JSON object per line with fields id, source, nl, label_stmt,
/// pred_stmt and annotation ("a".."e"). Blank lines are skipped.
std::vector<BenchmarkRecord> parse_benchmark(std::string_view text);
std::vector<BenchmarkRecord> load_benchmark(const std::string &path);

std::string read_file(const std::string &path);

} // namespace stmtsim
