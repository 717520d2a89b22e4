#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sew {

enum class Marriage { married, divorced, single, separated, widowed, nan, empty };
enum class Gender { female, male, other, nan, empty };

/// Normalized structured profile fields. Absent/empty fields produce no
/// token when encoded.
struct ProfileRecord {
    std::optional<std::string> age;     // digits, or any raw string verbatim
    std::optional<std::string> country; // 3-letter code
    Marriage marriage = Marriage::empty;
    Gender gender = Gender::empty;

    friend bool operator==(const ProfileRecord&, const ProfileRecord&) = default;
};

/// Normalization is case-insensitive and trims whitespace. Blank input means
/// empty; "nan" is a distinct category. Throws NormalizationError on
/// anything else unrecognized.
Marriage parse_marriage(std::string_view raw);
Gender parse_gender(std::string_view raw);

/// Canonical field names ("married", "nan", ...); empty -> "".
const char* to_string(Marriage value);
const char* to_string(Gender value);

/// Builds a record from raw CSV-style strings (blank = absent).
ProfileRecord make_profile(std::string_view age, std::string_view country,
                           std::string_view marriage, std::string_view gender);

/// Tokens in fixed order [age, country, marriage, gender]; empty fields are
/// skipped (later tokens shift left). Marriage maps to m/d/s/p/w/0, gender
/// to f/m/o/N.
std::vector<std::string> encode_profile(const ProfileRecord& record);

} // namespace sew
