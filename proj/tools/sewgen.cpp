// sewgen: renders English text (optionally fused with profile features) into
// squared-word glyph images, and ships the corpus tooling around that:
// dataset batching, statistics, train/test splits, blueprint files, and a
// linear pixel-baseline classifier.

#include "sew/corpus.hpp"
#include "sew/csv.hpp"
#include "sew/dataset.hpp"
#include "sew/errors.hpp"
#include "sew/evalkit.hpp"
#include "sew/glyph_font.hpp"
#include "sew/layout.hpp"
#include "sew/profile.hpp"
#include "sew/render.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace sew;

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitConfig = 2;

struct CorpusFlags {
    std::string input;
    std::string format = "csv";
    std::string text_col = "text";
    std::string id_col;
    std::vector<std::string> label_flags;
    std::vector<std::string> profile_flags;
};

void add_corpus_flags(CLI::App* cmd, CorpusFlags& flags) {
    cmd->add_option("--input", flags.input, "input corpus file")->required();
    cmd->add_option("--input-format", flags.format, "csv or tsv")
        ->check(CLI::IsMember({"csv", "tsv"}));
    cmd->add_option("--text-col", flags.text_col, "column holding the text");
    cmd->add_option("--id-col", flags.id_col, "column holding sample ids");
    cmd->add_option("--label-col", flags.label_flags,
                    "label mapping name=column (repeatable)");
    cmd->add_option("--profile-col", flags.profile_flags,
                    "profile mapping field=column, fields: age country marriage gender");
}

std::pair<std::string, std::string> split_key_value(const std::string& arg,
                                                    const std::string& flag) {
    const auto eq = arg.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError(flag + " expects key=value, got \"" + arg + "\"");
    }
    return {arg.substr(0, eq), arg.substr(eq + 1)};
}

ColumnMap column_map_from_flags(const CorpusFlags& flags) {
    ColumnMap columns;
    columns.text = flags.text_col;
    if (!flags.id_col.empty()) columns.id = flags.id_col;
    for (const auto& arg : flags.label_flags) {
        auto [name, column] = split_key_value(arg, "--label-col");
        columns.labels[name] = column;
    }
    for (const auto& arg : flags.profile_flags) {
        auto [field, column] = split_key_value(arg, "--profile-col");
        columns.profile[field] = column;
    }
    return columns;
}

std::vector<CorpusSample> load_from_flags(const CorpusFlags& flags, LoadReport& report) {
    const TableFormat format = flags.format == "tsv" ? TableFormat::tsv : TableFormat::csv;
    auto corpus = load_corpus(flags.input, format, column_map_from_flags(flags), &report);
    const std::size_t shown = std::min<std::size_t>(report.issues.size(), 10);
    for (std::size_t i = 0; i < shown; ++i) {
        std::cerr << flags.input << ":" << report.issues[i].line << ": "
                  << report.issues[i].message << '\n';
    }
    if (report.issues.size() > shown) {
        std::cerr << "... " << report.issues.size() - shown << " more issue(s)\n";
    }
    return corpus;
}

struct LayoutFlags {
    RenderConfig config;
    std::string mode = "sew";
    std::string blueprint_file;
    CLI::Option* grid_opt = nullptr;
};

void add_layout_flags(CLI::App* cmd, LayoutFlags& flags) {
    flags.grid_opt =
        cmd->add_option("--grid-n", flags.config.grid_n,
                        "words per row (default 6; 8 for attention modes)");
    cmd->add_option("--image-px", flags.config.image_px, "image side in pixels");
    cmd->add_option("--cut-length", flags.config.cut_length, "max words per image");
    cmd->add_option("--attn-count", flags.config.attn_count, "number of enlarged words");
    cmd->add_option("--attn-scale", flags.config.attn_scale, "attention size multiplier");
    cmd->add_option("--chars-per-row", flags.config.chars_per_row,
                    "character cells per row in raw modes");
    cmd->add_option("--margin-px", flags.config.margin_px, "outer margin in pixels");
    cmd->add_option("--blueprint", flags.blueprint_file,
                    "blueprint file overriding the generated attention grid");
}

Scheme resolve_scheme(LayoutFlags& flags) {
    const auto scheme = scheme_from_string(flags.mode);
    if (!scheme) throw ConfigError("unknown mode \"" + flags.mode + "\"");
    const bool attention = *scheme == Scheme::sew_attn || *scheme == Scheme::sew_attn_profile;
    if (attention && flags.grid_opt->count() == 0) {
        flags.config.grid_n = 8;
    }
    return *scheme;
}

std::optional<BlueprintGrid> load_blueprint_file(const std::string& path) {
    if (path.empty()) return std::nullopt;
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_blueprint(text);
}

ProfileRecord profile_from_flag(const std::string& arg) {
    std::string age, country, marriage, gender;
    std::size_t start = 0;
    while (start <= arg.size()) {
        const auto comma = std::min(arg.find(',', start), arg.size());
        const std::string item = arg.substr(start, comma - start);
        start = comma + 1;
        if (item.empty()) continue;
        auto [key, value] = split_key_value(item, "--profile");
        if (key == "age") age = value;
        else if (key == "country") country = value;
        else if (key == "marriage") marriage = value;
        else if (key == "gender") gender = value;
        else throw ConfigError("unknown profile field \"" + key + "\"");
    }
    return make_profile(age, country, marriage, gender);
}

void write_image(const ImageBuffer& image, const std::string& format,
                 const std::string& out_path) {
    write_bytes(out_path, format == "png" ? encode_png(image) : encode_pgm(image));
}

int cmd_render(LayoutFlags& layout, const std::string& text, const std::string& profile_arg,
               const std::string& glyph_arg, const std::string& format,
               const std::string& out_path) {
    if (!glyph_arg.empty()) {
        // Diagnostic path: dump one glyph at full image size.
        if (glyph_arg.size() != 1) throw ConfigError("--glyph expects a single character");
        const auto block = GlyphFont::builtin().rasterize_scaled(glyph_arg[0],
                                                                 layout.config.image_px);
        ImageBuffer image = ImageBuffer::blank(layout.config.image_px, layout.config.image_px);
        for (int y = 0; y < image.height; ++y) {
            for (int x = 0; x < image.width; ++x) {
                if (block[static_cast<std::size_t>(y) * image.width + x]) image.set(x, y, 0);
            }
        }
        write_image(image, format, out_path);
        return kExitOk;
    }

    const Scheme scheme = resolve_scheme(layout);
    const auto blueprint = load_blueprint_file(layout.blueprint_file);
    const std::vector<std::string> words = tokenize(text);
    std::vector<std::string> profile_tokens;
    if (!profile_arg.empty()) {
        profile_tokens = encode_profile(profile_from_flag(profile_arg));
    }
    const LayoutPlan plan = plan_for_scheme(scheme, words, profile_tokens,
                                            blueprint ? &*blueprint : nullptr, layout.config);
    write_image(render(plan, layout.config), format, out_path);
    std::cout << "placed " << plan.words_placed << " word(s), truncated "
              << plan.words_truncated << ", wrote " << out_path << '\n';
    return kExitOk;
}

int cmd_batch(LayoutFlags& layout, const CorpusFlags& corpus_flags, const std::string& format,
              const std::string& out_dir, std::uint64_t seed, bool seed_given) {
    const Scheme scheme = resolve_scheme(layout);
    const auto blueprint = load_blueprint_file(layout.blueprint_file);
    LoadReport report;
    const auto corpus = load_from_flags(corpus_flags, report);
    const ImageFormat image_format = format == "png" ? ImageFormat::png : ImageFormat::pgm;
    const auto manifest = batch_render(corpus, layout.config, scheme,
                                       blueprint ? &*blueprint : nullptr, image_format, out_dir);
    if (seed_given) {
        std::ofstream summary(std::filesystem::path(out_dir) / "summary.txt", std::ios::app);
        summary << "seed:               " << seed << '\n';
    }
    std::cout << "rendered " << manifest.rendered << "/" << manifest.entries.size()
              << " sample(s) to " << out_dir << " (fingerprint " << manifest.fingerprint
              << ")\n";
    if (manifest.failed > 0) {
        std::cerr << manifest.failed << " sample(s) failed to render; see manifest.jsonl\n";
        return kExitPartial;
    }
    return kExitOk;
}

int cmd_stats(const CorpusFlags& corpus_flags, std::vector<int> coverage_points, int cut_length,
              const std::string& histogram_out) {
    LoadReport report;
    const auto corpus = load_from_flags(corpus_flags, report);
    if (coverage_points.empty()) coverage_points = {25, 64};
    const CorpusStats stats = word_count_stats(corpus, coverage_points);

    std::cout << "samples:      " << stats.sample_count << '\n';
    std::cout << "mean words:   " << stats.mean_words << '\n';
    std::cout << "median words: " << stats.median_words << '\n';
    std::cout << "max words:    " << stats.max_words << '\n';
    for (const auto& [k, fraction] : stats.coverage) {
        std::cout << "coverage(" << k << "): " << 100.0 * fraction << "%\n";
    }
    std::cout << "truncation(" << cut_length
              << "): " << 100.0 * truncation_report(corpus, cut_length) << "%\n";

    if (!histogram_out.empty()) {
        std::ofstream out(histogram_out, std::ios::trunc);
        if (!out) throw IoError("cannot open " + histogram_out + " for writing");
        out << "word_count,count\n";
        for (const auto& [count, samples] : stats.histogram) {
            out << count << ',' << samples << '\n';
        }
        std::cout << "histogram written to " << histogram_out << '\n';
    }
    return kExitOk;
}

void write_split_csv(const std::string& path, const std::vector<CorpusSample>& samples) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");

    std::vector<std::string> label_names;
    bool any_profile = false;
    for (const auto& sample : samples) {
        for (const auto& [name, value] : sample.labels) {
            if (std::find(label_names.begin(), label_names.end(), name) == label_names.end()) {
                label_names.push_back(name);
            }
        }
        any_profile = any_profile || sample.profile.has_value();
    }
    std::sort(label_names.begin(), label_names.end());

    std::vector<std::string> header{"id", "text"};
    header.insert(header.end(), label_names.begin(), label_names.end());
    if (any_profile) {
        header.insert(header.end(), {"age", "country", "marriage", "gender"});
    }
    write_record(out, header, ',');
    for (const auto& sample : samples) {
        std::vector<std::string> row{sample.id, sample.text};
        for (const auto& name : label_names) {
            auto it = sample.labels.find(name);
            row.push_back(it == sample.labels.end() ? "" : std::to_string(it->second));
        }
        if (any_profile) {
            if (sample.profile) {
                row.push_back(sample.profile->age.value_or(""));
                row.push_back(sample.profile->country.value_or(""));
                row.push_back(to_string(sample.profile->marriage));
                row.push_back(to_string(sample.profile->gender));
            } else {
                row.insert(row.end(), {"", "", "", ""});
            }
        }
        write_record(out, row, ',');
    }
    if (!out) throw IoError("write failed: " + path);
}

int cmd_split(const CorpusFlags& corpus_flags, double ratio, std::uint64_t seed,
              const std::string& out_train, const std::string& out_test) {
    LoadReport report;
    const auto corpus = load_from_flags(corpus_flags, report);
    const auto [train, test] = split_train_test(corpus, ratio, seed);
    write_split_csv(out_train, train);
    write_split_csv(out_test, test);
    std::cout << "train: " << train.size() << " sample(s) -> " << out_train << '\n'
              << "test:  " << test.size() << " sample(s) -> " << out_test << '\n';
    return kExitOk;
}

int cmd_blueprint(int grid_n, int attn_count, int attn_scale, const std::string& validate_path,
                  const std::string& out_path) {
    if (!validate_path.empty()) {
        std::ifstream in(validate_path);
        if (!in) throw IoError("cannot open " + validate_path);
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        const BlueprintGrid grid = parse_blueprint(text);
        validate_blueprint_structure(grid, attn_scale);
        std::cout << "ok: " << grid.n << "x" << grid.n << ", anchors=" << grid.count(1)
                  << ", covered=" << grid.count(-1) << ", flow=" << grid.count(0) << '\n';
        return kExitOk;
    }
    const BlueprintGrid grid = attention_blueprint(grid_n, attn_count, attn_scale);
    const std::string text = format_blueprint(grid);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::trunc);
        if (!out) throw IoError("cannot open " + out_path + " for writing");
        out << text;
    }
    return kExitOk;
}

int cmd_eval(const std::string& manifest_path, const std::string& label_name, int factor,
             const TrainOptions& options, double ratio, const std::string& model_out) {
    const DatasetManifest manifest = load_manifest(manifest_path);
    const auto base_dir = std::filesystem::path(manifest_path).parent_path();

    std::vector<std::vector<double>> features;
    std::vector<int> labels;
    int image_px = 0;
    for (const ManifestEntry& entry : manifest.entries) {
        if (!entry.error.empty()) continue;
        const auto it = entry.labels.find(label_name);
        if (it == entry.labels.end()) continue;
        const ImageBuffer image = load_image(base_dir / entry.image);
        image_px = image.width;
        features.push_back(downsample(image, factor));
        labels.push_back(it->second);
    }
    if (features.empty()) {
        throw ConfigError("manifest has no usable samples with label \"" + label_name + "\"");
    }

    const auto [train_idx, test_idx] = split_indices(features.size(), ratio, options.seed);
    std::vector<std::vector<double>> train_x, test_x;
    std::vector<int> train_y, test_y;
    for (std::size_t i : train_idx) {
        train_x.push_back(features[i]);
        train_y.push_back(labels[i]);
    }
    for (std::size_t i : test_idx) {
        test_x.push_back(features[i]);
        test_y.push_back(labels[i]);
    }

    LinearModel model = train_linear(train_x, train_y, options);
    model.factor = factor;
    model.image_px = image_px;

    const EvalResult train_result = evaluate(model, train_x, train_y);
    std::cout << "train accuracy: " << train_result.accuracy << " (" << train_x.size()
              << " samples)\n";
    if (!test_x.empty()) {
        const EvalResult test_result = evaluate(model, test_x, test_y);
        std::cout << "test accuracy:  " << test_result.accuracy << " (" << test_x.size()
                  << " samples)\n"
                  << "confusion: tp=" << test_result.true_positive
                  << " fp=" << test_result.false_positive
                  << " tn=" << test_result.true_negative
                  << " fn=" << test_result.false_negative << '\n';
    }
    if (!model_out.empty()) {
        save_model(model_out, model);
        std::cout << "model written to " << model_out << '\n';
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"squared-word glyph image generator"};
    app.require_subcommand(1);

    // render
    auto* render_cmd = app.add_subcommand("render", "render one sentence to an image");
    LayoutFlags render_layout;
    std::string render_text, render_profile, render_glyph, render_format = "pgm",
                render_out;
    render_cmd->add_option("--mode", render_layout.mode,
                           "raw, raw-linewrap, sew, sew-attn, sew-profile, sew-attn-profile");
    render_cmd->add_option("--text", render_text, "sentence to render");
    render_cmd->add_option("--profile", render_profile,
                           "profile fields, e.g. age=36,country=IND,marriage=married,gender=male");
    render_cmd->add_option("--glyph", render_glyph,
                           "diagnostic: dump one glyph at image size instead of a sentence");
    render_cmd->add_option("--format", render_format, "pgm or png")
        ->check(CLI::IsMember({"pgm", "png"}));
    render_cmd->add_option("--out", render_out, "output image path")->required();
    add_layout_flags(render_cmd, render_layout);

    // batch
    auto* batch_cmd = app.add_subcommand("batch", "render a corpus into a dataset");
    LayoutFlags batch_layout;
    CorpusFlags batch_corpus;
    std::string batch_format = "pgm", batch_out_dir;
    std::uint64_t batch_seed = 0;
    batch_cmd->add_option("--mode", batch_layout.mode, "layout scheme");
    batch_cmd->add_option("--format", batch_format, "pgm or png")
        ->check(CLI::IsMember({"pgm", "png"}));
    batch_cmd->add_option("--out-dir", batch_out_dir, "dataset directory")->required();
    auto* batch_seed_opt =
        batch_cmd->add_option("--seed", batch_seed, "recorded in the dataset summary");
    add_corpus_flags(batch_cmd, batch_corpus);
    add_layout_flags(batch_cmd, batch_layout);

    // stats
    auto* stats_cmd = app.add_subcommand("stats", "word-count statistics for a corpus");
    CorpusFlags stats_corpus;
    std::vector<int> stats_coverage;
    int stats_cut = 36;
    std::string stats_histogram;
    stats_cmd->add_option("--coverage", stats_coverage, "coverage points (default 25 64)");
    stats_cmd->add_option("--cut-length", stats_cut, "cut length for the truncation report");
    stats_cmd->add_option("--histogram-out", stats_histogram,
                          "write word_count,count CSV here");
    add_corpus_flags(stats_cmd, stats_corpus);

    // split
    auto* split_cmd = app.add_subcommand("split", "seeded train/test split");
    CorpusFlags split_corpus;
    double split_ratio = 0.8;
    std::uint64_t split_seed = 0;
    std::string split_train = "train.csv", split_test = "test.csv";
    split_cmd->add_option("--ratio", split_ratio, "train fraction (default 0.8)");
    split_cmd->add_option("--seed", split_seed, "shuffle seed");
    split_cmd->add_option("--out-train", split_train, "train output file");
    split_cmd->add_option("--out-test", split_test, "test output file");
    add_corpus_flags(split_cmd, split_corpus);

    // blueprint
    auto* blueprint_cmd = app.add_subcommand("blueprint", "emit or validate a blueprint grid");
    int bp_grid = 8, bp_count = 4, bp_scale = 2;
    std::string bp_validate, bp_out;
    blueprint_cmd->add_option("--grid-n", bp_grid, "grid dimension");
    blueprint_cmd->add_option("--attn-count", bp_count, "number of anchor blocks");
    blueprint_cmd->add_option("--attn-scale", bp_scale, "block scale");
    blueprint_cmd->add_option("--validate", bp_validate, "validate this file instead of emitting");
    blueprint_cmd->add_option("--out", bp_out, "write the emitted grid here (default stdout)");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "linear pixel baseline over a dataset");
    std::string eval_manifest, eval_label, eval_model_out;
    int eval_factor = 28;
    double eval_ratio = 0.8;
    TrainOptions eval_options;
    eval_cmd->add_option("--manifest", eval_manifest, "manifest.jsonl path")->required();
    eval_cmd->add_option("--label-name", eval_label, "label to classify")->required();
    eval_cmd->add_option("--factor", eval_factor, "downsample factor");
    eval_cmd->add_option("--epochs", eval_options.epochs, "training epochs");
    eval_cmd->add_option("--lr", eval_options.learning_rate, "learning rate");
    eval_cmd->add_option("--l2", eval_options.l2, "L2 regularization");
    eval_cmd->add_option("--seed", eval_options.seed, "split seed");
    eval_cmd->add_option("--ratio", eval_ratio, "train fraction (default 0.8)");
    eval_cmd->add_option("--model-out", eval_model_out, "save the model as plain text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (render_cmd->parsed()) {
            if (render_text.empty() && render_glyph.empty()) {
                throw ConfigError("render needs --text or --glyph");
            }
            return cmd_render(render_layout, render_text, render_profile, render_glyph,
                              render_format, render_out);
        }
        if (batch_cmd->parsed()) {
            return cmd_batch(batch_layout, batch_corpus, batch_format, batch_out_dir,
                             batch_seed, batch_seed_opt->count() > 0);
        }
        if (stats_cmd->parsed()) {
            return cmd_stats(stats_corpus, stats_coverage, stats_cut, stats_histogram);
        }
        if (split_cmd->parsed()) {
            return cmd_split(split_corpus, split_ratio, split_seed, split_train, split_test);
        }
        if (blueprint_cmd->parsed()) {
            return cmd_blueprint(bp_grid, bp_count, bp_scale, bp_validate, bp_out);
        }
        if (eval_cmd->parsed()) {
            return cmd_eval(eval_manifest, eval_label, eval_factor, eval_options, eval_ratio,
                            eval_model_out);
        }
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}
