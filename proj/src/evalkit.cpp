#include "sew/evalkit.hpp"

#include "sew/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sew {
namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double dot_with_bias(const std::vector<double>& weights, const std::vector<double>& x) {
    double z = weights.back();
    for (std::size_t i = 0; i < x.size(); ++i) z += weights[i] * x[i];
    return z;
}

void check_dataset(const std::vector<std::vector<double>>& features,
                   const std::vector<int>& labels) {
    if (features.size() != labels.size()) {
        throw TrainError("feature and label counts differ");
    }
    if (features.empty()) throw TrainError("no training samples");
    const std::size_t dim = features.front().size();
    for (const auto& row : features) {
        if (row.size() != dim) throw TrainError("inconsistent feature dimensions");
    }
    for (int label : labels) {
        if (label != 0 && label != 1) throw TrainError("labels must be 0 or 1");
    }
}

} // namespace

std::vector<double> downsample(const ImageBuffer& image, int factor) {
    if (factor < 1 || image.width % factor != 0 || image.height % factor != 0) {
        throw ConfigError("downsample factor " + std::to_string(factor) +
                          " does not divide a " + std::to_string(image.width) + "x" +
                          std::to_string(image.height) + " image");
    }
    const int bw = image.width / factor;
    const int bh = image.height / factor;
    std::vector<double> features(static_cast<std::size_t>(bw) * bh, 0.0);
    for (int y = 0; y < image.height; ++y) {
        for (int x = 0; x < image.width; ++x) {
            if (image.at(x, y) == 0) {
                features[static_cast<std::size_t>(y / factor) * bw + (x / factor)] += 1.0;
            }
        }
    }
    const double block_area = static_cast<double>(factor) * factor;
    for (double& f : features) f /= block_area;
    return features;
}

double logistic_loss(const std::vector<double>& weights,
                     const std::vector<std::vector<double>>& features,
                     const std::vector<int>& labels, double l2) {
    const auto n = static_cast<double>(features.size());
    double loss = 0.0;
    for (std::size_t i = 0; i < features.size(); ++i) {
        const double z = dot_with_bias(weights, features[i]);
        // log(1 + exp(-|z|)) form avoids overflow for large |z|
        const double y = labels[i];
        loss += std::log1p(std::exp(-std::abs(z))) + (z > 0 ? (1.0 - y) * z : -y * z);
    }
    loss /= n;
    for (std::size_t j = 0; j + 1 < weights.size(); ++j) {
        loss += 0.5 * l2 * weights[j] * weights[j];
    }
    return loss;
}

std::vector<double> logistic_gradient(const std::vector<double>& weights,
                                      const std::vector<std::vector<double>>& features,
                                      const std::vector<int>& labels, double l2) {
    const auto n = static_cast<double>(features.size());
    std::vector<double> grad(weights.size(), 0.0);
    for (std::size_t i = 0; i < features.size(); ++i) {
        const double err = sigmoid(dot_with_bias(weights, features[i])) - labels[i];
        for (std::size_t j = 0; j < features[i].size(); ++j) {
            grad[j] += err * features[i][j];
        }
        grad.back() += err;
    }
    for (double& g : grad) g /= n;
    for (std::size_t j = 0; j + 1 < weights.size(); ++j) {
        grad[j] += l2 * weights[j];
    }
    return grad;
}

LinearModel train_linear(const std::vector<std::vector<double>>& features,
                         const std::vector<int>& labels, const TrainOptions& options) {
    check_dataset(features, labels);
    const bool has_positive = std::find(labels.begin(), labels.end(), 1) != labels.end();
    const bool has_negative = std::find(labels.begin(), labels.end(), 0) != labels.end();
    if (!has_positive || !has_negative) {
        throw TrainError("training set needs at least one sample of each class");
    }

    LinearModel model;
    model.weights.assign(features.front().size() + 1, 0.0);
    for (int epoch = 0; epoch < options.epochs; ++epoch) {
        const auto grad = logistic_gradient(model.weights, features, labels, options.l2);
        for (std::size_t j = 0; j < model.weights.size(); ++j) {
            model.weights[j] -= options.learning_rate * grad[j];
        }
    }
    return model;
}

EvalResult evaluate(const LinearModel& model, const std::vector<std::vector<double>>& features,
                    const std::vector<int>& labels) {
    if (features.empty() || features.size() != labels.size()) {
        throw EvalError("evaluation set is empty or inconsistent");
    }
    EvalResult result;
    for (std::size_t i = 0; i < features.size(); ++i) {
        const int predicted = sigmoid(dot_with_bias(model.weights, features[i])) >= 0.5 ? 1 : 0;
        if (predicted == 1 && labels[i] == 1) ++result.true_positive;
        if (predicted == 1 && labels[i] == 0) ++result.false_positive;
        if (predicted == 0 && labels[i] == 0) ++result.true_negative;
        if (predicted == 0 && labels[i] == 1) ++result.false_negative;
    }
    result.accuracy = static_cast<double>(result.true_positive + result.true_negative) /
                      static_cast<double>(features.size());
    return result;
}

void save_model(const std::filesystem::path& path, const LinearModel& model) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << model.factor << ' ' << model.image_px << '\n';
    out.precision(17);
    for (double w : model.weights) out << w << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

LinearModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    LinearModel model;
    if (!(in >> model.factor >> model.image_px)) {
        throw IoError(path.string() + ": malformed model header");
    }
    double w = 0.0;
    while (in >> w) model.weights.push_back(w);
    if (model.weights.empty()) throw IoError(path.string() + ": no weights");
    return model;
}

} // namespace sew
