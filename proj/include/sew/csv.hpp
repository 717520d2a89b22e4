#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sew {

/// RFC 4180-style reader: quoted fields may contain the delimiter, doubled
/// quotes, and newlines. Works for CSV and (with '\t') TSV.
class DelimitedReader {
public:
    DelimitedReader(std::istream& in, char delimiter);

    /// Reads one record into fields. Returns false at end of input.
    bool next_record(std::vector<std::string>& fields);

    /// 1-based line number where the last record started.
    std::size_t record_line() const { return record_line_; }

private:
    std::istream& in_;
    char delimiter_;
    std::size_t line_ = 1;
    std::size_t record_line_ = 1;
};

/// Quotes a field if it contains the delimiter, a quote, or a newline.
std::string delimited_escape(const std::string& field, char delimiter);
void write_record(std::ostream& out, const std::vector<std::string>& fields, char delimiter);

} // namespace sew
