#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace sew {

/// Base resolution of every glyph in the embedded font (square, pixels).
inline constexpr int kGlyphBase = 16;

/// Fixed-resolution monochrome bitmap for one printable character.
/// rows[y] bit x (LSB = leftmost column) is the pixel at (x, y); 1 = ink.
struct GlyphBitmap {
    char codepoint = 0;
    std::array<std::uint16_t, kGlyphBase> rows{};

    bool pixel(int x, int y) const { return (rows[y] >> x) & 1; }
    int ink_count() const;
};

/// The embedded monospaced bitmap font. Covers printable ASCII 0x20..0x7e.
/// Immutable after construction; safe for concurrent readers.
class GlyphFont {
public:
    /// The font baked into the binary. Identical on every platform.
    static const GlyphFont& builtin();

    bool supports(char ch) const;

    /// Throws UnsupportedGlyph for characters outside the supported set.
    const GlyphBitmap& glyph(char ch) const;

    /// Filled-box glyph substituted for unsupported characters.
    const GlyphBitmap& fallback() const { return fallback_; }

    /// Like glyph() but substitutes the fallback box instead of throwing.
    const GlyphBitmap& glyph_or_fallback(char ch) const;

    /// Nearest-neighbor scale of the glyph to cell_px x cell_px.
    /// Returns a row-major binary block (0 background, 1 ink). Scaling by an
    /// integer factor k expands each base pixel into a k x k block.
    std::vector<std::uint8_t> rasterize_scaled(char ch, int cell_px) const;

    static std::vector<std::uint8_t> scale_bitmap(const GlyphBitmap& glyph, int cell_px);

    int base_resolution() const { return kGlyphBase; }

private:
    GlyphFont();

    static constexpr char kFirst = 0x20; // space
    static constexpr char kLast = 0x7e;  // '~'

    std::array<GlyphBitmap, kLast - kFirst + 1> glyphs_{};
    GlyphBitmap fallback_{};
};

/// Convenience wrappers over the builtin font.
const GlyphBitmap& glyph_bitmap(char ch);
std::vector<std::uint8_t> rasterize_scaled(char ch, int cell_px);

} // namespace sew
