#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sew {

/// The six image layout schemes.
enum class Scheme {
    raw,              // alphabet-level flow, words may break across rows
    raw_linewrap,     // alphabet-level flow, whole words wrapped to next row
    sew,              // one word per grid square
    sew_attn,         // leading words enlarged per a blueprint grid
    sew_profile,      // profile tokens ahead of the text, uniform size
    sew_attn_profile, // profile tokens in the enlarged blueprint squares
};

const char* to_string(Scheme scheme);
std::optional<Scheme> scheme_from_string(std::string_view name);

/// How profile tokens are merged into the image.
enum class ProfileMode { uniform, attended };

/// Axis-aligned square area of the image owned by one word.
struct SquareRegion {
    int x = 0;
    int y = 0;
    int side = 0;
};

/// One character placed at a pixel location at a cell size.
struct DrawCommand {
    char character = 0;
    int x = 0;
    int y = 0;
    int cell_px = 0;

    friend bool operator==(const DrawCommand&, const DrawCommand&) = default;
};

/// Ordered draw commands plus placement accounting for one image.
/// words_placed + words_truncated always equals the input token count.
struct LayoutPlan {
    std::vector<DrawCommand> commands;
    int words_placed = 0;
    int words_truncated = 0;
    Scheme scheme = Scheme::sew;
};

/// NxN cell grid steering the attention schemes: 0 = normal flow cell,
/// 1 = top-left anchor of an enlarged square, -1 = covered by one.
struct BlueprintGrid {
    int n = 0;
    std::vector<std::int8_t> cells; // row-major, n*n entries

    std::int8_t at(int row, int col) const {
        return cells[static_cast<std::size_t>(row) * n + col];
    }
    int count(std::int8_t value) const;
};

struct RenderConfig {
    int image_px = 224;     // square image side
    int grid_n = 6;         // words per row/column in sew schemes
    int cut_length = 36;    // max words rendered per image
    int attn_count = 4;     // enlarged leading words in attention schemes
    int attn_scale = 2;     // cell-size multiplier for enlarged words
    int chars_per_row = 16; // character cells per row in raw schemes
    int margin_px = 0;      // outer margin

    /// Throws ConfigError on out-of-range fields.
    void validate() const;
};

/// Pixel geometry of the word grid: equal square cells, block centered,
/// leftover pixels split evenly (top-left corner rounded down).
struct GridGeometry {
    int cell = 0;
    int origin_x = 0;
    int origin_y = 0;
};

GridGeometry grid_geometry(const RenderConfig& config);
SquareRegion grid_cell_region(const GridGeometry& geom, int row, int col, int span = 1);

/// Lays out one word inside its square: ceil(sqrt(L)) letter cells per side,
/// letters row-major from the top-left, each cell floor(side / c) pixels.
/// Empty word -> empty list. Throws SquareTooSmall when the square cannot
/// give each letter at least one pixel.
std::vector<DrawCommand> word_square_plan(std::string_view word, const SquareRegion& square);

/// One word per square, row-major from the top-left; at most
/// min(cut_length, grid_n^2) words placed, the rest counted truncated.
LayoutPlan sew_grid_plan(const std::vector<std::string>& words, const RenderConfig& config);

/// Builds the attention blueprint: attn_count anchor cells, each owning an
/// attn_scale^2 block, blocks packed in the most-square arrangement and
/// centered in the grid. Throws BlueprintOverflow when they cannot fit.
BlueprintGrid attention_blueprint(int grid_n, int attn_count, int attn_scale);

/// Attention layout: the first count(1) input words go to the anchor squares
/// (enlarged attn_scale times), the remaining words flow through the 0 cells
/// row-major; -1 cells are skipped. cut_length caps total words placed.
LayoutPlan sew_attention_plan(const std::vector<std::string>& words,
                              const BlueprintGrid& blueprint, const RenderConfig& config);

/// Alphabet-level flow over a chars_per_row x chars_per_row cell grid,
/// single space cells between words. preserve_words starts any word that
/// would straddle a row boundary on the next row instead (words longer than
/// one row throw WordTooLong).
LayoutPlan raw_sc_plan(std::string_view text, const RenderConfig& config, bool preserve_words);

/// Profile tokens fused with the text. uniform: profile tokens occupy the
/// leading grid cells at normal size, text flows after them. attended:
/// profile tokens take the blueprint anchor squares, all text flows through
/// the 0 cells. blueprint_override replaces the generated attention
/// blueprint when non-null (attended mode only).
LayoutPlan compose_profile_plan(const std::vector<std::string>& words,
                                const std::vector<std::string>& profile_tokens,
                                ProfileMode mode, const RenderConfig& config,
                                const BlueprintGrid* blueprint_override = nullptr);

/// Plain-text blueprint format: first line n, then n rows of space-separated
/// {-1, 0, 1}.
std::string format_blueprint(const BlueprintGrid& grid);
BlueprintGrid parse_blueprint(std::string_view text);

/// Structural check: every 1 anchors an attn_scale x attn_scale block whose
/// other cells are -1, and every -1 belongs to exactly one such block.
/// Throws ConfigError describing the first violation.
void validate_blueprint_structure(const BlueprintGrid& grid, int attn_scale);

} // namespace sew
