#include "sew/layout.hpp"

#include "sew/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sew {
namespace {

// Smallest c with c*c >= len. Starts from the fp estimate and nudges, so
// perfect squares are exact.
int square_side_cells(int len) {
    int c = static_cast<int>(std::sqrt(static_cast<double>(len)));
    while (c * c < len) ++c;
    while (c > 1 && (c - 1) * (c - 1) >= len) --c;
    return c;
}

std::vector<std::string> split_whitespace(std::string_view text) {
    std::vector<std::string> words;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i > start) words.emplace_back(text.substr(start, i - start));
    }
    return words;
}

// Shared engine for the attention schemes: attended tokens fill the anchor
// squares (enlarged attn_scale times), flow tokens fill the 0 cells, both in
// row-major cell order. Commands come out in token order, attended first,
// which is also input order for every caller.
LayoutPlan place_with_blueprint(const std::vector<std::string>& attended,
                                const std::vector<std::string>& flow,
                                const BlueprintGrid& blueprint, const RenderConfig& config,
                                Scheme scheme) {
    config.validate();
    if (blueprint.n != config.grid_n) {
        throw ConfigError("blueprint is " + std::to_string(blueprint.n) + "x" +
                          std::to_string(blueprint.n) + " but grid_n is " +
                          std::to_string(config.grid_n));
    }
    validate_blueprint_structure(blueprint, config.attn_scale);

    std::vector<std::pair<int, int>> anchors;
    std::vector<std::pair<int, int>> flow_cells;
    for (int r = 0; r < blueprint.n; ++r) {
        for (int c = 0; c < blueprint.n; ++c) {
            if (blueprint.at(r, c) == 1) anchors.emplace_back(r, c);
            if (blueprint.at(r, c) == 0) flow_cells.emplace_back(r, c);
        }
    }
    if (attended.size() > anchors.size()) {
        throw ConfigError("blueprint has " + std::to_string(anchors.size()) +
                          " anchor cells for " + std::to_string(attended.size()) +
                          " attended tokens");
    }

    const GridGeometry geom = grid_geometry(config);
    LayoutPlan plan;
    plan.scheme = scheme;
    int placed = 0;
    for (std::size_t k = 0; k < attended.size(); ++k) {
        if (placed >= config.cut_length) break;
        auto [row, col] = anchors[k];
        auto commands =
            word_square_plan(attended[k], grid_cell_region(geom, row, col, config.attn_scale));
        plan.commands.insert(plan.commands.end(), commands.begin(), commands.end());
        ++placed;
    }
    if (placed == static_cast<int>(attended.size())) {
        for (std::size_t k = 0; k < flow.size(); ++k) {
            if (placed >= config.cut_length || k >= flow_cells.size()) break;
            auto [row, col] = flow_cells[k];
            auto commands = word_square_plan(flow[k], grid_cell_region(geom, row, col));
            plan.commands.insert(plan.commands.end(), commands.begin(), commands.end());
            ++placed;
        }
    }
    plan.words_placed = placed;
    plan.words_truncated = static_cast<int>(attended.size() + flow.size()) - placed;
    return plan;
}

} // namespace

const char* to_string(Scheme scheme) {
    switch (scheme) {
    case Scheme::raw: return "raw";
    case Scheme::raw_linewrap: return "raw-linewrap";
    case Scheme::sew: return "sew";
    case Scheme::sew_attn: return "sew-attn";
    case Scheme::sew_profile: return "sew-profile";
    case Scheme::sew_attn_profile: return "sew-attn-profile";
    }
    return "?";
}

std::optional<Scheme> scheme_from_string(std::string_view name) {
    for (Scheme s : {Scheme::raw, Scheme::raw_linewrap, Scheme::sew, Scheme::sew_attn,
                     Scheme::sew_profile, Scheme::sew_attn_profile}) {
        if (name == to_string(s)) return s;
    }
    return std::nullopt;
}

int BlueprintGrid::count(std::int8_t value) const {
    return static_cast<int>(std::count(cells.begin(), cells.end(), value));
}

void RenderConfig::validate() const {
    if (image_px < 1) throw ConfigError("image_px must be >= 1");
    if (grid_n < 1) throw ConfigError("grid_n must be >= 1");
    if (cut_length < 1) throw ConfigError("cut_length must be >= 1");
    if (attn_count < 0) throw ConfigError("attn_count must be >= 0");
    if (attn_scale < 1) throw ConfigError("attn_scale must be >= 1");
    if (chars_per_row < 1) throw ConfigError("chars_per_row must be >= 1");
    if (margin_px < 0) throw ConfigError("margin_px must be >= 0");
    if (2 * margin_px >= image_px) throw ConfigError("margins leave no drawable area");
}

GridGeometry grid_geometry(const RenderConfig& config) {
    GridGeometry geom;
    geom.cell = (config.image_px - 2 * config.margin_px) / config.grid_n;
    if (geom.cell < 1) {
        throw ConfigError("grid cells smaller than a pixel; lower grid_n or margin_px");
    }
    geom.origin_x = geom.origin_y = (config.image_px - config.grid_n * geom.cell) / 2;
    return geom;
}

SquareRegion grid_cell_region(const GridGeometry& geom, int row, int col, int span) {
    return {geom.origin_x + col * geom.cell, geom.origin_y + row * geom.cell, span * geom.cell};
}

std::vector<DrawCommand> word_square_plan(std::string_view word, const SquareRegion& square) {
    if (word.empty()) return {};
    const int len = static_cast<int>(word.size());
    const int c = square_side_cells(len);
    const int cell = square.side / c;
    if (cell < 1) {
        throw SquareTooSmall("square of side " + std::to_string(square.side) +
                             " cannot hold a " + std::to_string(len) + "-letter word");
    }
    std::vector<DrawCommand> commands;
    commands.reserve(word.size());
    for (int i = 0; i < len; ++i) {
        commands.push_back(
            {word[i], square.x + (i % c) * cell, square.y + (i / c) * cell, cell});
    }
    return commands;
}

LayoutPlan sew_grid_plan(const std::vector<std::string>& words, const RenderConfig& config) {
    config.validate();
    const GridGeometry geom = grid_geometry(config);
    const long capacity = static_cast<long>(config.grid_n) * config.grid_n;
    const long limit =
        std::min<long>(static_cast<long>(words.size()), std::min<long>(config.cut_length, capacity));

    LayoutPlan plan;
    plan.scheme = Scheme::sew;
    for (long i = 0; i < limit; ++i) {
        const int row = static_cast<int>(i) / config.grid_n;
        const int col = static_cast<int>(i) % config.grid_n;
        auto commands = word_square_plan(words[i], grid_cell_region(geom, row, col));
        plan.commands.insert(plan.commands.end(), commands.begin(), commands.end());
    }
    plan.words_placed = static_cast<int>(limit);
    plan.words_truncated = static_cast<int>(words.size() - limit);
    return plan;
}

BlueprintGrid attention_blueprint(int grid_n, int attn_count, int attn_scale) {
    if (grid_n < 1) throw ConfigError("grid_n must be >= 1");
    if (attn_count < 0) throw ConfigError("attn_count must be >= 0");
    if (attn_scale < 1) throw ConfigError("attn_scale must be >= 1");

    BlueprintGrid grid{grid_n, std::vector<std::int8_t>(
                                   static_cast<std::size_t>(grid_n) * grid_n, 0)};
    if (attn_count == 0) return grid;

    // Most-square arrangement of the blocks, centered with integer offsets.
    const int bcols = square_side_cells(attn_count);
    const int brows = (attn_count + bcols - 1) / bcols;
    const int span_x = bcols * attn_scale;
    const int span_y = brows * attn_scale;
    if (span_x > grid_n || span_y > grid_n) {
        throw BlueprintOverflow(std::to_string(attn_count) + " blocks of scale " +
                                std::to_string(attn_scale) + " do not fit in a " +
                                std::to_string(grid_n) + "x" + std::to_string(grid_n) + " grid");
    }
    const int off_row = (grid_n - span_y) / 2;
    const int off_col = (grid_n - span_x) / 2;
    for (int b = 0; b < attn_count; ++b) {
        const int r0 = off_row + (b / bcols) * attn_scale;
        const int c0 = off_col + (b % bcols) * attn_scale;
        for (int dr = 0; dr < attn_scale; ++dr) {
            for (int dc = 0; dc < attn_scale; ++dc) {
                grid.cells[static_cast<std::size_t>(r0 + dr) * grid_n + (c0 + dc)] =
                    (dr == 0 && dc == 0) ? 1 : -1;
            }
        }
    }
    return grid;
}

LayoutPlan sew_attention_plan(const std::vector<std::string>& words,
                              const BlueprintGrid& blueprint, const RenderConfig& config) {
    const std::size_t anchor_count = static_cast<std::size_t>(blueprint.count(1));
    const std::size_t attended_n = std::min(words.size(), anchor_count);
    std::vector<std::string> attended(words.begin(), words.begin() + attended_n);
    std::vector<std::string> flow(words.begin() + attended_n, words.end());
    return place_with_blueprint(attended, flow, blueprint, config, Scheme::sew_attn);
}

LayoutPlan raw_sc_plan(std::string_view text, const RenderConfig& config, bool preserve_words) {
    config.validate();
    const int n = config.chars_per_row;
    const int cell = (config.image_px - 2 * config.margin_px) / n;
    if (cell < 1) {
        throw ConfigError("character cells smaller than a pixel; lower chars_per_row");
    }
    const int origin = (config.image_px - n * cell) / 2;

    const std::vector<std::string> words = split_whitespace(text);
    if (preserve_words) {
        for (const auto& word : words) {
            if (static_cast<int>(word.size()) > n) {
                throw WordTooLong("word \"" + word + "\" is longer than one row (" +
                                  std::to_string(n) + " cells)");
            }
        }
    }

    LayoutPlan plan;
    plan.scheme = preserve_words ? Scheme::raw_linewrap : Scheme::raw;
    int col = 0;
    int row = 0;
    const auto exhausted = [&] { return row >= n; };
    const auto place = [&](char ch) {
        plan.commands.push_back({ch, origin + col * cell, origin + row * cell, cell});
        if (++col == n) {
            col = 0;
            ++row;
        }
    };

    int placed_words = 0;
    for (std::size_t wi = 0; wi < words.size(); ++wi) {
        if (placed_words >= config.cut_length) break;
        if (wi > 0) {
            if (exhausted()) break;
            place(' ');
        }
        if (preserve_words && col > 0 && n - col < static_cast<int>(words[wi].size())) {
            col = 0;
            ++row;
        }
        bool any = false;
        for (char ch : words[wi]) {
            if (exhausted()) break;
            place(ch);
            any = true;
        }
        if (any) ++placed_words;
    }
    plan.words_placed = placed_words;
    plan.words_truncated = static_cast<int>(words.size()) - placed_words;
    return plan;
}

LayoutPlan compose_profile_plan(const std::vector<std::string>& words,
                                const std::vector<std::string>& profile_tokens,
                                ProfileMode mode, const RenderConfig& config,
                                const BlueprintGrid* blueprint_override) {
    if (mode == ProfileMode::uniform) {
        std::vector<std::string> merged;
        merged.reserve(profile_tokens.size() + words.size());
        merged.insert(merged.end(), profile_tokens.begin(), profile_tokens.end());
        merged.insert(merged.end(), words.begin(), words.end());
        LayoutPlan plan = sew_grid_plan(merged, config);
        plan.scheme = Scheme::sew_profile;
        return plan;
    }
    if (blueprint_override) {
        return place_with_blueprint(profile_tokens, words, *blueprint_override, config,
                                    Scheme::sew_attn_profile);
    }
    if (static_cast<int>(profile_tokens.size()) > config.attn_count) {
        throw ConfigError("profile has " + std::to_string(profile_tokens.size()) +
                          " tokens but attn_count is " + std::to_string(config.attn_count));
    }
    const BlueprintGrid blueprint =
        attention_blueprint(config.grid_n, config.attn_count, config.attn_scale);
    return place_with_blueprint(profile_tokens, words, blueprint, config,
                                Scheme::sew_attn_profile);
}

std::string format_blueprint(const BlueprintGrid& grid) {
    std::ostringstream out;
    out << grid.n << '\n';
    for (int r = 0; r < grid.n; ++r) {
        for (int c = 0; c < grid.n; ++c) {
            if (c > 0) out << ' ';
            out << static_cast<int>(grid.at(r, c));
        }
        out << '\n';
    }
    return out.str();
}

BlueprintGrid parse_blueprint(std::string_view text) {
    std::istringstream in{std::string(text)};
    int n = 0;
    if (!(in >> n) || n < 1) {
        throw ConfigError("blueprint: first token must be a positive grid size");
    }
    BlueprintGrid grid{n, {}};
    grid.cells.reserve(static_cast<std::size_t>(n) * n);
    for (long i = 0; i < static_cast<long>(n) * n; ++i) {
        int value = 0;
        if (!(in >> value)) {
            throw ConfigError("blueprint: expected " + std::to_string(n * n) +
                              " cells, got " + std::to_string(i));
        }
        if (value < -1 || value > 1) {
            throw ConfigError("blueprint: cell value " + std::to_string(value) +
                              " outside {-1, 0, 1}");
        }
        grid.cells.push_back(static_cast<std::int8_t>(value));
    }
    std::string trailing;
    if (in >> trailing) {
        throw ConfigError("blueprint: trailing data after " + std::to_string(n * n) + " cells");
    }
    return grid;
}

void validate_blueprint_structure(const BlueprintGrid& grid, int attn_scale) {
    if (attn_scale < 1) throw ConfigError("attn_scale must be >= 1");
    const int n = grid.n;
    std::vector<char> claimed(static_cast<std::size_t>(n) * n, 0);
    const auto cell_name = [](int r, int c) {
        return "(" + std::to_string(r) + "," + std::to_string(c) + ")";
    };
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            if (grid.at(r, c) != 1) continue;
            if (r + attn_scale > n || c + attn_scale > n) {
                throw ConfigError("blueprint: anchor " + cell_name(r, c) +
                                  " has no room for a scale-" + std::to_string(attn_scale) +
                                  " block");
            }
            for (int dr = 0; dr < attn_scale; ++dr) {
                for (int dc = 0; dc < attn_scale; ++dc) {
                    auto& claim = claimed[static_cast<std::size_t>(r + dr) * n + (c + dc)];
                    if (claim) {
                        throw ConfigError("blueprint: cell " + cell_name(r + dr, c + dc) +
                                          " claimed by two anchor blocks");
                    }
                    claim = 1;
                    if ((dr || dc) && grid.at(r + dr, c + dc) != -1) {
                        throw ConfigError("blueprint: cell " + cell_name(r + dr, c + dc) +
                                          " inside the block of anchor " + cell_name(r, c) +
                                          " must be -1");
                    }
                }
            }
        }
    }
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            if (grid.at(r, c) == -1 && !claimed[static_cast<std::size_t>(r) * n + c]) {
                throw ConfigError("blueprint: cell " + cell_name(r, c) +
                                  " is -1 but belongs to no anchor block");
            }
        }
    }
}

} // namespace sew
