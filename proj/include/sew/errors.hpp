#pragma once

#include <stdexcept>
#include <string>

namespace sew {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Character outside the embedded font's supported set.
struct UnsupportedGlyph : Error {
    explicit UnsupportedGlyph(char ch)
        : Error(std::string("unsupported glyph: byte 0x") + hex(ch)), codepoint(ch) {}
    char codepoint;

private:
    static std::string hex(char ch) {
        static const char* digits = "0123456789abcdef";
        unsigned char b = static_cast<unsigned char>(ch);
        return {digits[b >> 4], digits[b & 0xf]};
    }
};

/// Square region too small to give each letter at least one pixel.
struct SquareTooSmall : Error {
    using Error::Error;
};

/// Attention blocks do not fit in the blueprint grid.
struct BlueprintOverflow : Error {
    using Error::Error;
};

/// preserve_words mode hit a word longer than one row.
struct WordTooLong : Error {
    using Error::Error;
};

/// Unrecognized categorical value in a profile field.
struct NormalizationError : Error {
    using Error::Error;
};

/// Invalid configuration (CLI flags, column maps, blueprint files, ...).
struct ConfigError : Error {
    using Error::Error;
};

/// File could not be read or written.
struct IoError : Error {
    using Error::Error;
};

struct EmptyCorpus : Error {
    using Error::Error;
};

struct SplitError : Error {
    using Error::Error;
};

struct TrainError : Error {
    using Error::Error;
};

struct EvalError : Error {
    using Error::Error;
};

} // namespace sew
