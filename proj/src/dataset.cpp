#include "sew/dataset.hpp"

#include "sew/errors.hpp"
#include "sew/hash.hpp"
#include "sew/render.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace sew {
namespace {

using nlohmann::json;

std::string join_words(const std::vector<std::string>& words) {
    std::string text;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i > 0) text.push_back(' ');
        text += words[i];
    }
    return text;
}

json entry_to_json(const ManifestEntry& entry) {
    json labels = json::object();
    for (const auto& [name, value] : entry.labels) labels[name] = value;
    json obj = {
        {"id", entry.id},
        {"image", entry.image},
        {"labels", labels},
        {"words_placed", entry.words_placed},
        {"words_truncated", entry.words_truncated},
        {"scheme", to_string(entry.scheme)},
    };
    if (!entry.error.empty()) obj["error"] = entry.error;
    return obj;
}

} // namespace

const char* to_string(ImageFormat format) {
    return format == ImageFormat::pgm ? "pgm" : "png";
}

std::string config_fingerprint(const RenderConfig& config, Scheme scheme,
                               const BlueprintGrid* blueprint) {
    std::ostringstream canon;
    canon << "v1|" << to_string(scheme) << '|' << config.image_px << '|' << config.grid_n << '|'
          << config.cut_length << '|' << config.attn_count << '|' << config.attn_scale << '|'
          << config.chars_per_row << '|' << config.margin_px << "|tok=" << kTokenizerVersion
          << "|bp=" << (blueprint ? format_blueprint(*blueprint) : std::string("-"));
    return to_hex(fnv1a64(canon.str()));
}

std::string sanitize_filename(std::string_view id) {
    std::string name;
    name.reserve(id.size());
    for (char ch : id) {
        const bool safe = (ch >= '0' && ch <= '9') || (ch >= 'a' && ch <= 'z') ||
                          (ch >= 'A' && ch <= 'Z') || ch == '-' || ch == '_' || ch == '.';
        name.push_back(safe ? ch : '_');
    }
    if (name.empty()) name = "sample";
    return name;
}

LayoutPlan plan_for_scheme(Scheme scheme, const std::vector<std::string>& words,
                           const std::vector<std::string>& profile_tokens,
                           const BlueprintGrid* blueprint, const RenderConfig& config) {
    switch (scheme) {
    case Scheme::raw:
        return raw_sc_plan(join_words(words), config, false);
    case Scheme::raw_linewrap:
        return raw_sc_plan(join_words(words), config, true);
    case Scheme::sew:
        return sew_grid_plan(words, config);
    case Scheme::sew_attn: {
        if (blueprint) return sew_attention_plan(words, *blueprint, config);
        return sew_attention_plan(
            words, attention_blueprint(config.grid_n, config.attn_count, config.attn_scale),
            config);
    }
    case Scheme::sew_profile:
        return compose_profile_plan(words, profile_tokens, ProfileMode::uniform, config);
    case Scheme::sew_attn_profile:
        return compose_profile_plan(words, profile_tokens, ProfileMode::attended, config,
                                    blueprint);
    }
    throw ConfigError("unknown scheme");
}

DatasetManifest batch_render(const std::vector<CorpusSample>& corpus,
                             const RenderConfig& config, Scheme scheme,
                             const BlueprintGrid* blueprint, ImageFormat format,
                             const std::filesystem::path& out_dir) {
    config.validate();
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

    DatasetManifest manifest;
    manifest.fingerprint = config_fingerprint(config, scheme, blueprint);

    const std::string ext = std::string(".") + to_string(format);
    std::set<std::string> used_names;
    for (const CorpusSample& sample : corpus) {
        ManifestEntry entry;
        entry.id = sample.id;
        entry.labels = sample.labels;
        entry.scheme = scheme;

        std::string name = sanitize_filename(sample.id);
        for (int suffix = 2; used_names.count(name); ++suffix) {
            name = sanitize_filename(sample.id) + "-" + std::to_string(suffix);
        }
        used_names.insert(name);

        try {
            const std::vector<std::string> words = tokenize(sample.text);
            const std::vector<std::string> profile_tokens =
                sample.profile ? encode_profile(*sample.profile) : std::vector<std::string>{};
            const LayoutPlan plan =
                plan_for_scheme(scheme, words, profile_tokens, blueprint, config);
            const ImageBuffer image = render(plan, config);
            entry.image = name + ext;
            entry.words_placed = plan.words_placed;
            entry.words_truncated = plan.words_truncated;
            write_bytes(out_dir / entry.image,
                        format == ImageFormat::pgm ? encode_pgm(image) : encode_png(image));
            ++manifest.rendered;
        } catch (const Error& err) {
            entry.error = err.what();
            entry.image.clear();
            ++manifest.failed;
        }
        manifest.entries.push_back(std::move(entry));
    }

    std::ofstream manifest_out(out_dir / "manifest.jsonl", std::ios::trunc);
    if (!manifest_out) throw IoError("cannot write manifest in " + out_dir.string());
    for (const ManifestEntry& entry : manifest.entries) {
        json obj = entry_to_json(entry);
        obj["fingerprint"] = manifest.fingerprint;
        manifest_out << obj.dump() << '\n';
    }
    manifest_out.close();

    std::size_t truncated_samples = 0;
    for (const ManifestEntry& entry : manifest.entries) {
        if (entry.error.empty() && entry.words_truncated > 0) ++truncated_samples;
    }
    std::ofstream summary(out_dir / "summary.txt", std::ios::trunc);
    summary << "samples:            " << manifest.entries.size() << '\n'
            << "images written:     " << manifest.rendered << '\n'
            << "render errors:      " << manifest.failed << '\n'
            << "scheme:             " << to_string(scheme) << '\n'
            << "image format:       " << to_string(format) << '\n'
            << "fingerprint:        " << manifest.fingerprint << '\n';
    if (manifest.rendered > 0) {
        summary << "truncated samples:  " << truncated_samples << " ("
                << 100.0 * static_cast<double>(truncated_samples) /
                       static_cast<double>(manifest.rendered)
                << "%)\n";
    }
    return manifest;
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    DatasetManifest manifest;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& err) {
            throw IoError(path.string() + ":" + std::to_string(line_no) + ": " + err.what());
        }
        ManifestEntry entry;
        entry.id = obj.value("id", "");
        entry.image = obj.value("image", "");
        entry.words_placed = obj.value("words_placed", 0);
        entry.words_truncated = obj.value("words_truncated", 0);
        entry.error = obj.value("error", "");
        if (auto scheme = scheme_from_string(obj.value("scheme", "sew"))) {
            entry.scheme = *scheme;
        }
        if (obj.contains("labels")) {
            for (const auto& [name, value] : obj["labels"].items()) {
                entry.labels[name] = value.get<int>();
            }
        }
        if (manifest.fingerprint.empty()) {
            manifest.fingerprint = obj.value("fingerprint", "");
        }
        if (entry.error.empty()) ++manifest.rendered; else ++manifest.failed;
        manifest.entries.push_back(std::move(entry));
    }
    return manifest;
}

} // namespace sew
