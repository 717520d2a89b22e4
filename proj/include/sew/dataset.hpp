#pragma once

#include "sew/corpus.hpp"
#include "sew/layout.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace sew {

/// Bumped whenever tokenize() changes behavior; folded into fingerprints.
inline constexpr std::string_view kTokenizerVersion = "ws-edgestrip-lower-1";

enum class ImageFormat { pgm, png };
const char* to_string(ImageFormat format);

struct ManifestEntry {
    std::string id;
    std::string image; // filename inside the dataset directory; empty on error
    std::map<std::string, int> labels;
    int words_placed = 0;
    int words_truncated = 0;
    Scheme scheme = Scheme::sew;
    std::string error; // empty on success
};

struct DatasetManifest {
    std::vector<ManifestEntry> entries;
    std::string fingerprint;
    std::size_t rendered = 0;
    std::size_t failed = 0;
};

/// Hash of every rendering-relevant setting: scheme, the full RenderConfig,
/// the blueprint, and the tokenizer version.
std::string config_fingerprint(const RenderConfig& config, Scheme scheme,
                               const BlueprintGrid* blueprint);

/// Filesystem-safe image name derived from a sample id.
std::string sanitize_filename(std::string_view id);

/// Builds the layout for one sample under the given scheme. blueprint
/// overrides the generated attention blueprint when non-null.
LayoutPlan plan_for_scheme(Scheme scheme, const std::vector<std::string>& words,
                           const std::vector<std::string>& profile_tokens,
                           const BlueprintGrid* blueprint, const RenderConfig& config);

/// Renders every sample to out_dir/<id>.<ext> and writes manifest.jsonl
/// (one entry per sample, corpus order) plus summary.txt. Per-sample render
/// errors become manifest error entries instead of aborting the batch.
DatasetManifest batch_render(const std::vector<CorpusSample>& corpus,
                             const RenderConfig& config, Scheme scheme,
                             const BlueprintGrid* blueprint, ImageFormat format,
                             const std::filesystem::path& out_dir);

DatasetManifest load_manifest(const std::filesystem::path& path);

} // namespace sew
