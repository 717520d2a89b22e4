#pragma once

#include "sew/layout.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace sew {

/// Square 8-bit grayscale buffer with a binary palette: 0 ink, 255 background.
struct ImageBuffer {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels; // row-major

    static ImageBuffer blank(int width, int height);

    std::uint8_t at(int x, int y) const {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }
    void set(int x, int y, std::uint8_t value) {
        pixels[static_cast<std::size_t>(y) * width + x] = value;
    }
    std::size_t ink_count() const;

    friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;
};

/// Blits every command's scaled glyph onto a background-initialized buffer.
/// Unsupported characters render as the filled-box fallback unless
/// use_fallback is false, in which case UnsupportedGlyph propagates.
ImageBuffer render(const LayoutPlan& plan, const RenderConfig& config, bool use_fallback = true);

/// Binary PGM (P5), maxval 255, no comments. Canonical bytes, used for
/// golden tests.
std::vector<std::uint8_t> encode_pgm(const ImageBuffer& image);
ImageBuffer decode_pgm(const std::vector<std::uint8_t>& bytes);

/// 8-bit grayscale PNG. Bytes are not canonical across zlib versions; the
/// contract is decode(encode(img)) == img.
std::vector<std::uint8_t> encode_png(const ImageBuffer& image);
ImageBuffer decode_png(const std::vector<std::uint8_t>& bytes);

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path);
void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);

/// Reads a .pgm or .png file, dispatching on the extension.
ImageBuffer load_image(const std::filesystem::path& path);

} // namespace sew
