#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ascan/errors.hpp"
#include "ascan/mat.hpp"
#include "ascan/random.hpp"

#include <json.hpp>

namespace ascan::dnn {

struct DnnLayer {
    Mat weights;   // fan_in x fan_out
    std::vector<double> bias;
    std::vector<double> bn_gamma;
    std::vector<double> bn_beta;
    std::vector<double> bn_running_mean;
    std::vector<double> bn_running_var;
};

/// Feed-forward net: per hidden layer affine -> batch norm -> ReLU -> dropout
/// (train only), then a sigmoid output unit.
struct DnnModel {
    std::size_t input_dim = 0;
    double bn_eps = 1e-3;
    std::vector<DnnLayer> hidden;
    std::vector<double> out_weights;
    double out_bias = 0.0;
};

struct TrainConfig {
    double dropout = 0.2;
    std::size_t minibatch = 10000;       // effective batch is min(minibatch, N)
    std::size_t patience = 10;           // epochs without validation improvement
    std::size_t max_epochs = 100;
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double adam_eps = 1e-8;
    std::uint64_t seed = 0;
    double validation_fraction = 0.1;
    double bn_momentum = 0.99;
};

enum class Mode { Train, Infer };

/// Standard topology: four hidden layers of 1024 units.
DnnModel init(std::size_t input_dim, std::uint64_t seed);
/// Custom widths (used by small-scale tests; same initialization scheme).
DnnModel init(std::size_t input_dim, const std::vector<std::size_t>& widths, std::uint64_t seed);

/// Scores in (0,1). Train mode normalizes with batch statistics (batch >= 2)
/// and applies dropout only when an engine is supplied; infer mode is a pure
/// function of (model, batch).
std::vector<double> forward(const DnnModel& model, const Mat& batch, Mode mode,
                            rnd::Engine* dropout_rng = nullptr, double dropout = 0.0);

/// Mean sigmoid cross-entropy of already-squashed scores against 0/1 labels.
double loss(std::span<const double> scores, std::span<const double> labels);

struct TrainHistory {
    std::vector<double> train_loss;
    std::vector<double> val_loss;
    std::size_t best_epoch = 0;
};

/// ADAM with early stopping on validation loss. The validation slice is the
/// temporally latest validation_fraction of rows when first_seen is provided
/// (row order otherwise). The model is left at the best-validation epoch.
TrainHistory train(DnnModel& model, const Mat& x, std::span<const double> y,
                   std::span<const std::int64_t> first_seen, const TrainConfig& cfg);

/// Infer-mode activations after the ReLU of hidden layer `layer_index` (1-based).
std::vector<double> hidden_activations(const DnnModel& model, std::span<const double> x,
                                       std::size_t layer_index);
/// Defaults to the penultimate layer (the last hidden one).
std::vector<double> hidden_activations(const DnnModel& model, std::span<const double> x);

struct LayerGrads {
    Mat weights;
    std::vector<double> bias;
    std::vector<double> bn_gamma;
    std::vector<double> bn_beta;
};

struct Gradients {
    std::vector<LayerGrads> hidden;
    std::vector<double> out_weights;
    double out_bias = 0.0;
};

/// Train-mode loss with dropout disabled; pure. Backs the finite-difference
/// gradient verification.
double train_mode_loss(const DnnModel& model, const Mat& x, std::span<const double> y);

/// Analytic gradients of train_mode_loss w.r.t. every parameter.
Gradients gradients(const DnnModel& model, const Mat& x, std::span<const double> y,
                    double* loss_out = nullptr);

nlohmann::json to_json(const DnnModel& model, const TrainConfig& cfg);
std::pair<DnnModel, TrainConfig> from_json(const nlohmann::json& doc);

} // namespace ascan::dnn
