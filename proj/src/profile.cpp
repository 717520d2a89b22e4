#include "sew/profile.hpp"

#include "sew/errors.hpp"

#include <algorithm>
#include <cctype>

namespace sew {
namespace {

std::string normalize(std::string_view raw) {
    std::size_t begin = 0;
    std::size_t end = raw.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(raw[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(raw[end - 1]))) --end;
    std::string out(raw.substr(begin, end - begin));
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    return out;
}

} // namespace

Marriage parse_marriage(std::string_view raw) {
    const std::string value = normalize(raw);
    if (value.empty()) return Marriage::empty;
    if (value == "married") return Marriage::married;
    if (value == "divorced" || value == "divorce") return Marriage::divorced;
    if (value == "single") return Marriage::single;
    if (value == "separated") return Marriage::separated;
    if (value == "widowed" || value == "widow") return Marriage::widowed;
    if (value == "nan") return Marriage::nan;
    throw NormalizationError("unrecognized marriage value: \"" + std::string(raw) + "\"");
}

Gender parse_gender(std::string_view raw) {
    const std::string value = normalize(raw);
    if (value.empty()) return Gender::empty;
    if (value == "female") return Gender::female;
    if (value == "male") return Gender::male;
    if (value == "other") return Gender::other;
    if (value == "nan") return Gender::nan;
    throw NormalizationError("unrecognized gender value: \"" + std::string(raw) + "\"");
}

const char* to_string(Marriage value) {
    switch (value) {
    case Marriage::married: return "married";
    case Marriage::divorced: return "divorced";
    case Marriage::single: return "single";
    case Marriage::separated: return "separated";
    case Marriage::widowed: return "widowed";
    case Marriage::nan: return "nan";
    case Marriage::empty: return "";
    }
    return "";
}

const char* to_string(Gender value) {
    switch (value) {
    case Gender::female: return "female";
    case Gender::male: return "male";
    case Gender::other: return "other";
    case Gender::nan: return "nan";
    case Gender::empty: return "";
    }
    return "";
}

ProfileRecord make_profile(std::string_view age, std::string_view country,
                           std::string_view marriage, std::string_view gender) {
    ProfileRecord record;
    std::string age_trimmed{age};
    // Age is used verbatim as a single word, numeric or not.
    {
        std::size_t begin = age_trimmed.find_first_not_of(" \t\r\n");
        std::size_t end = age_trimmed.find_last_not_of(" \t\r\n");
        age_trimmed = begin == std::string::npos
                          ? std::string{}
                          : age_trimmed.substr(begin, end - begin + 1);
    }
    if (!age_trimmed.empty()) record.age = age_trimmed;

    std::string country_norm = normalize(country);
    if (!country_norm.empty()) {
        std::transform(country_norm.begin(), country_norm.end(), country_norm.begin(),
                       [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
        record.country = country_norm;
    }
    record.marriage = parse_marriage(marriage);
    record.gender = parse_gender(gender);
    return record;
}

std::vector<std::string> encode_profile(const ProfileRecord& record) {
    std::vector<std::string> tokens;
    if (record.age) tokens.push_back(*record.age);
    if (record.country) tokens.push_back(*record.country);
    switch (record.marriage) {
    case Marriage::married: tokens.emplace_back("m"); break;
    case Marriage::divorced: tokens.emplace_back("d"); break;
    case Marriage::single: tokens.emplace_back("s"); break;
    case Marriage::separated: tokens.emplace_back("p"); break;
    case Marriage::widowed: tokens.emplace_back("w"); break;
    case Marriage::nan: tokens.emplace_back("0"); break;
    case Marriage::empty: break;
    }
    switch (record.gender) {
    case Gender::female: tokens.emplace_back("f"); break;
    case Gender::male: tokens.emplace_back("m"); break;
    case Gender::other: tokens.emplace_back("o"); break;
    case Gender::nan: tokens.emplace_back("N"); break;
    case Gender::empty: break;
    }
    return tokens;
}

} // namespace sew
