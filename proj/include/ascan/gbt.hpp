#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ascan/errors.hpp"
#include "ascan/mat.hpp"

#include <json.hpp>

namespace ascan::gbt {

struct GbtConfig {
    int max_depth = 6;
    double eta = 0.1;
    double subsample_rows = 0.5;      // on rows, never columns
    double lambda = 1.0;              // leaf L2 regularizer
    double min_child_hessian = 1.0;
    int max_rounds = 500;
    int patience_rounds = 10;
    std::uint64_t seed = 0;
};

/// Flat node array; node 0 is the root. Traversal goes left iff
/// x[feature] < threshold.
struct TreeNode {
    bool is_leaf = true;
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double leaf_weight = 0.0;
};

struct Tree {
    std::vector<TreeNode> nodes;
    double eval(std::span<const double> x) const;
};

struct GbtEnsemble {
    std::vector<Tree> trees;
    double base_score_logit = 0.0;
    double eta = 0.1;
    std::size_t input_dim = 0;
};

struct RoundRecord {
    double train_logloss = 0.0;
    double val_accuracy = 0.0;
};

/// Logistic-loss gradient and hessian w.r.t. the logit: (p - y, p(1-p)).
std::pair<double, double> grad_hess(double p, double y);

/// w = -G / (H + lambda).
double leaf_weight(double grad_sum, double hess_sum, double lambda);

struct SplitCandidate {
    double threshold = 0.0;
    double gain = 0.0;
};

/// Exact greedy scan over one feature. Candidate thresholds are midpoints
/// between consecutive distinct values; gain is the second-order surrogate
/// reduction; both children must reach min_child_hessian. Ties resolve to the
/// lowest threshold; returns nullopt when no positive-gain split exists.
std::optional<SplitCandidate> best_split(std::span<const double> values,
                                         std::span<const double> gradients,
                                         std::span<const double> hessians, double lambda,
                                         double min_child_hessian);

/// Newton boosting with row subsampling and accuracy-based early stopping.
/// Validation defaults to the training rows when none is supplied. The
/// returned ensemble is truncated to the best-accuracy round.
std::pair<GbtEnsemble, std::vector<RoundRecord>> train_gbt(
    const Mat& x, std::span<const double> y, const GbtConfig& cfg, const Mat* val_x = nullptr,
    std::span<const double> val_y = {});

/// sigma(base + eta * sum of tree outputs). Throws ShapeMismatch.
double predict(const GbtEnsemble& ensemble, std::span<const double> x);

nlohmann::json to_json(const GbtEnsemble& ensemble, const GbtConfig& cfg);
std::pair<GbtEnsemble, GbtConfig> from_json(const nlohmann::json& doc);

double sigmoid(double logit);

} // namespace ascan::gbt
