#pragma once

#include "sew/render.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace sew {

/// Block-mean ink fraction per factor x factor block, row-major, values in
/// [0, 1]. Throws ConfigError when factor does not divide the image.
std::vector<double> downsample(const ImageBuffer& image, int factor);

/// Logistic regression over downsampled pixel features. weights holds one
/// entry per feature plus a trailing bias.
struct LinearModel {
    std::vector<double> weights;
    int factor = 0;
    int image_px = 0;
};

struct TrainOptions {
    int epochs = 500;
    double learning_rate = 0.5;
    double l2 = 0.0;
    std::uint64_t seed = 0; // kept for interface stability; training is
                            // deterministic (zero init, full batch)
};

/// Mean cross-entropy plus (l2/2)*|w|^2 over the non-bias weights.
double logistic_loss(const std::vector<double>& weights,
                     const std::vector<std::vector<double>>& features,
                     const std::vector<int>& labels, double l2);
std::vector<double> logistic_gradient(const std::vector<double>& weights,
                                      const std::vector<std::vector<double>>& features,
                                      const std::vector<int>& labels, double l2);

/// Full-batch gradient descent from zero weights. Throws TrainError when
/// labels are single-class or inputs are inconsistent.
LinearModel train_linear(const std::vector<std::vector<double>>& features,
                         const std::vector<int>& labels, const TrainOptions& options);

struct EvalResult {
    double accuracy = 0.0;
    int true_positive = 0;
    int false_positive = 0;
    int true_negative = 0;
    int false_negative = 0;
};

/// Accuracy and confusion counts at the 0.5 probability threshold.
/// Throws EvalError on an empty set.
EvalResult evaluate(const LinearModel& model, const std::vector<std::vector<double>>& features,
                    const std::vector<int>& labels);

/// Plain-text model format: "factor image_px" on the first line, then one
/// weight per line.
void save_model(const std::filesystem::path& path, const LinearModel& model);
LinearModel load_model(const std::filesystem::path& path);

} // namespace sew
