#pragma once

#include "sew/profile.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sew {

/// One text sample with optional binary labels and profile fields.
struct CorpusSample {
    std::string id;
    std::string text;
    std::map<std::string, int> labels; // label name -> 0/1
    std::optional<ProfileRecord> profile;
};

enum class TableFormat { csv, tsv };

/// Names the columns to pull out of a delimited file. Only text is required.
struct ColumnMap {
    std::string text;
    std::optional<std::string> id;
    std::map<std::string, std::string> labels;  // label name -> column name
    std::map<std::string, std::string> profile; // age/country/marriage/gender -> column name
};

struct LoadIssue {
    std::size_t line = 0;
    std::string message;
};

struct LoadReport {
    std::vector<LoadIssue> issues;
    std::size_t rows_read = 0;
    std::size_t samples_loaded = 0;
};

/// One sample per data row. Malformed rows are skipped and reported with
/// line numbers; rows with empty text are kept but flagged. Throws
/// ConfigError when the text column is missing, IoError on unreadable files.
std::vector<CorpusSample> load_corpus(const std::filesystem::path& path, TableFormat format,
                                      const ColumnMap& columns, LoadReport* report = nullptr);

/// Whitespace split, strip leading/trailing non-alphanumeric characters,
/// ASCII lowercase, drop tokens that become empty.
std::vector<std::string> tokenize(std::string_view text);

struct CorpusStats {
    std::size_t sample_count = 0;
    double mean_words = 0.0;
    double median_words = 0.0;
    int max_words = 0;
    std::map<int, double> coverage;       // K -> fraction of samples with count <= K
    std::map<int, std::size_t> histogram; // word count -> sample count
};

/// Per-sample token-count statistics. Throws EmptyCorpus on empty input.
CorpusStats word_count_stats(const std::vector<CorpusSample>& corpus,
                             const std::vector<int>& coverage_points);

/// Fraction of samples with more than cut_length words; exactly
/// 1 - coverage(cut_length).
double truncation_report(const std::vector<CorpusSample>& corpus, int cut_length);

/// Seeded shuffle split of [0, n): |train| = round(ratio * n), disjoint and
/// exhaustive. The shuffle is a Fisher-Yates driven by xorshift64* so the
/// same (n, ratio, seed) reproduces bit-identically anywhere.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
split_indices(std::size_t n, double ratio, std::uint64_t seed);

/// split_indices applied to whole samples.
std::pair<std::vector<CorpusSample>, std::vector<CorpusSample>>
split_train_test(const std::vector<CorpusSample>& corpus, double ratio, std::uint64_t seed);

} // namespace sew
