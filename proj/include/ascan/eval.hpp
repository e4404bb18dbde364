#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ascan/errors.hpp"

namespace ascan::eval {

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
    double threshold = 0.0;
};

struct RocCurve {
    std::vector<RocPoint> points;  // fpr nondecreasing, (0,0) .. (1,1)
    double auc = 0.0;              // trapezoidal
};

struct CalibrationResult {
    double target_fpr = 0.0;
    double threshold = 0.0;
    double achieved_fpr_on_benign = 0.0;
    std::optional<double> tpr_on_test;
};

/// Thresholds sweep distinct scores descending; tied scores share one vertex.
/// Throws SingleClass unless both labels are present.
RocCurve roc_curve(std::span<const double> scores, std::span<const std::uint8_t> labels);

/// Smallest threshold (from the score set plus a sentinel above the maximum)
/// whose benign false-positive rate is <= target_fpr.
double threshold_at_fpr(std::span<const double> benign_scores, double target_fpr);

double tpr_at_threshold(std::span<const double> malicious_scores, double threshold);

/// CSV with header `fpr,tpr,threshold`.
void write_roc_csv(const RocCurve& roc, const std::filesystem::path& path);

std::string calibration_to_json(const CalibrationResult& result);

} // namespace ascan::eval
