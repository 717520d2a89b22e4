#include "sew/csv.hpp"

#include <istream>
#include <ostream>

namespace sew {

DelimitedReader::DelimitedReader(std::istream& in, char delimiter)
    : in_(in), delimiter_(delimiter) {}

bool DelimitedReader::next_record(std::vector<std::string>& fields) {
    fields.clear();
    if (in_.peek() == std::char_traits<char>::eof()) return false;
    record_line_ = line_;

    std::string field;
    bool quoted = false;
    int ch;
    while ((ch = in_.get()) != std::char_traits<char>::eof()) {
        const char c = static_cast<char>(ch);
        if (c == '\n') ++line_;
        if (quoted) {
            if (c == '"') {
                if (in_.peek() == '"') {
                    field.push_back('"');
                    in_.get();
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        if (c == '"' && field.empty()) {
            quoted = true;
        } else if (c == delimiter_) {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c == '\r' && in_.peek() == '\n') {
            // swallow, record ends on the '\n'
        } else if (c == '\n') {
            break;
        } else {
            field.push_back(c);
        }
    }
    fields.push_back(std::move(field));
    return true;
}

std::string delimited_escape(const std::string& field, char delimiter) {
    const bool needs_quotes = field.find_first_of(std::string{delimiter} + "\"\r\n") !=
                              std::string::npos;
    if (!needs_quotes) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_record(std::ostream& out, const std::vector<std::string>& fields, char delimiter) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out.put(delimiter);
        out << delimited_escape(fields[i], delimiter);
    }
    out.put('\n');
}

} // namespace sew
