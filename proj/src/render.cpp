#include "sew/render.hpp"

#include "sew/errors.hpp"
#include "sew/glyph_font.hpp"

#include <png.h>
#include <zlib.h>

#include <cstring>
#include <fstream>
#include <string>

namespace sew {
namespace {

void append_u32_be(std::vector<std::uint8_t>& out, std::uint32_t value) {
    out.push_back(static_cast<std::uint8_t>(value >> 24));
    out.push_back(static_cast<std::uint8_t>(value >> 16));
    out.push_back(static_cast<std::uint8_t>(value >> 8));
    out.push_back(static_cast<std::uint8_t>(value));
}

void append_png_chunk(std::vector<std::uint8_t>& out, const char type[4],
                      const std::vector<std::uint8_t>& payload) {
    append_u32_be(out, static_cast<std::uint32_t>(payload.size()));
    const std::size_t crc_start = out.size();
    out.insert(out.end(), type, type + 4);
    out.insert(out.end(), payload.begin(), payload.end());
    const auto crc = crc32(0L, out.data() + crc_start, static_cast<uInt>(out.size() - crc_start));
    append_u32_be(out, static_cast<std::uint32_t>(crc));
}

} // namespace

ImageBuffer ImageBuffer::blank(int width, int height) {
    ImageBuffer image;
    image.width = width;
    image.height = height;
    image.pixels.assign(static_cast<std::size_t>(width) * height, 255);
    return image;
}

std::size_t ImageBuffer::ink_count() const {
    std::size_t total = 0;
    for (std::uint8_t p : pixels) {
        if (p == 0) ++total;
    }
    return total;
}

ImageBuffer render(const LayoutPlan& plan, const RenderConfig& config, bool use_fallback) {
    config.validate();
    ImageBuffer image = ImageBuffer::blank(config.image_px, config.image_px);
    const GlyphFont& font = GlyphFont::builtin();
    for (const DrawCommand& cmd : plan.commands) {
        if (cmd.x < 0 || cmd.y < 0 || cmd.cell_px < 1 ||
            cmd.x + cmd.cell_px > image.width || cmd.y + cmd.cell_px > image.height) {
            throw Error("draw command outside the image bounds");
        }
        const GlyphBitmap& glyph =
            use_fallback ? font.glyph_or_fallback(cmd.character) : font.glyph(cmd.character);
        const auto block = GlyphFont::scale_bitmap(glyph, cmd.cell_px);
        for (int y = 0; y < cmd.cell_px; ++y) {
            for (int x = 0; x < cmd.cell_px; ++x) {
                if (block[static_cast<std::size_t>(y) * cmd.cell_px + x]) {
                    image.set(cmd.x + x, cmd.y + y, 0);
                }
            }
        }
    }
    return image;
}

std::vector<std::uint8_t> encode_pgm(const ImageBuffer& image) {
    const std::string header = "P5\n" + std::to_string(image.width) + " " +
                               std::to_string(image.height) + "\n255\n";
    std::vector<std::uint8_t> bytes;
    bytes.reserve(header.size() + image.pixels.size());
    bytes.insert(bytes.end(), header.begin(), header.end());
    bytes.insert(bytes.end(), image.pixels.begin(), image.pixels.end());
    return bytes;
}

ImageBuffer decode_pgm(const std::vector<std::uint8_t>& bytes) {
    std::size_t pos = 0;
    const auto at_end = [&] { return pos >= bytes.size(); };
    // Header tokens may be separated by any whitespace; '#' starts a comment.
    const auto next_token = [&]() -> std::string {
        std::string token;
        while (!at_end()) {
            char ch = static_cast<char>(bytes[pos]);
            if (ch == '#') {
                while (!at_end() && bytes[pos] != '\n') ++pos;
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(ch))) {
                if (!token.empty()) return token;
                ++pos;
                continue;
            }
            token.push_back(ch);
            ++pos;
        }
        return token;
    };

    if (next_token() != "P5") throw IoError("pgm: missing P5 magic");
    int width = 0;
    int height = 0;
    int maxval = 0;
    try {
        width = std::stoi(next_token());
        height = std::stoi(next_token());
        maxval = std::stoi(next_token());
    } catch (const std::exception&) {
        throw IoError("pgm: malformed header");
    }
    if (width < 1 || height < 1) throw IoError("pgm: bad dimensions");
    if (maxval != 255) throw IoError("pgm: only maxval 255 supported");
    ++pos; // single whitespace byte after maxval
    const std::size_t expected = static_cast<std::size_t>(width) * height;
    if (bytes.size() - pos < expected) throw IoError("pgm: truncated pixel data");

    ImageBuffer image;
    image.width = width;
    image.height = height;
    image.pixels.assign(bytes.begin() + pos, bytes.begin() + pos + expected);
    return image;
}

std::vector<std::uint8_t> encode_png(const ImageBuffer& image) {
    // Raw stream: each scanline prefixed with filter type 0.
    std::vector<std::uint8_t> raw;
    raw.reserve(static_cast<std::size_t>(image.height) * (image.width + 1));
    for (int y = 0; y < image.height; ++y) {
        raw.push_back(0);
        raw.insert(raw.end(), image.pixels.begin() + static_cast<std::size_t>(y) * image.width,
                   image.pixels.begin() + static_cast<std::size_t>(y + 1) * image.width);
    }
    uLongf compressed_size = compressBound(static_cast<uLong>(raw.size()));
    std::vector<std::uint8_t> compressed(compressed_size);
    if (compress2(compressed.data(), &compressed_size, raw.data(),
                  static_cast<uLong>(raw.size()), 9) != Z_OK) {
        throw Error("png: zlib compression failed");
    }
    compressed.resize(compressed_size);

    std::vector<std::uint8_t> ihdr;
    append_u32_be(ihdr, static_cast<std::uint32_t>(image.width));
    append_u32_be(ihdr, static_cast<std::uint32_t>(image.height));
    ihdr.push_back(8); // bit depth
    ihdr.push_back(0); // color type: grayscale
    ihdr.push_back(0); // compression
    ihdr.push_back(0); // filter
    ihdr.push_back(0); // interlace

    std::vector<std::uint8_t> bytes{0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
    append_png_chunk(bytes, "IHDR", ihdr);
    append_png_chunk(bytes, "IDAT", compressed);
    append_png_chunk(bytes, "IEND", {});
    return bytes;
}

ImageBuffer decode_png(const std::vector<std::uint8_t>& bytes) {
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&png, bytes.data(), bytes.size())) {
        throw IoError(std::string("png: ") + png.message);
    }
    png.format = PNG_FORMAT_GRAY;
    ImageBuffer image;
    image.width = static_cast<int>(png.width);
    image.height = static_cast<int>(png.height);
    image.pixels.resize(PNG_IMAGE_SIZE(png));
    if (!png_image_finish_read(&png, nullptr, image.pixels.data(), 0, nullptr)) {
        throw IoError(std::string("png: ") + png.message);
    }
    return image;
}

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed: " + path.string());
    return bytes;
}

void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed: " + path.string());
}

ImageBuffer load_image(const std::filesystem::path& path) {
    const std::string ext = path.extension().string();
    if (ext == ".pgm") return decode_pgm(read_bytes(path));
    if (ext == ".png") return decode_png(read_bytes(path));
    throw ConfigError("unsupported image extension: " + path.string());
}

} // namespace sew
