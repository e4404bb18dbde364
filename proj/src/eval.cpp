#include "ascan/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>

#include <json.hpp>

namespace ascan::eval {

RocCurve roc_curve(std::span<const double> scores, std::span<const std::uint8_t> labels) {
    if (scores.size() != labels.size())
        throw std::invalid_argument("scores and labels differ in length");
    std::size_t pos = 0, neg = 0;
    for (std::uint8_t y : labels) (y ? pos : neg) += 1;
    if (pos == 0 || neg == 0) throw SingleClass("ROC needs both classes");

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a] > scores[b];
    });

    RocCurve roc;
    roc.points.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});

    std::size_t tp = 0, fp = 0, i = 0;
    while (i < order.size()) {
        const double s = scores[order[i]];
        std::size_t j = i;
        while (j < order.size() && scores[order[j]] == s) {
            (labels[order[j]] ? tp : fp) += 1;
            ++j;
        }
        roc.points.push_back({static_cast<double>(fp) / static_cast<double>(neg),
                              static_cast<double>(tp) / static_cast<double>(pos), s});
        i = j;
    }

    double auc = 0.0;
    for (std::size_t k = 1; k < roc.points.size(); ++k) {
        const auto& a = roc.points[k - 1];
        const auto& b = roc.points[k];
        auc += (b.fpr - a.fpr) * (a.tpr + b.tpr) * 0.5;
    }
    roc.auc = auc;
    return roc;
}

double threshold_at_fpr(std::span<const double> benign_scores, double target_fpr) {
    if (benign_scores.empty()) throw std::invalid_argument("benign score set is empty");
    if (!(target_fpr > 0.0 && target_fpr < 1.0))
        throw std::invalid_argument("target_fpr must be in (0,1)");

    std::vector<double> sorted(benign_scores.begin(), benign_scores.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());

    // Candidates ascending: each distinct score, then a sentinel just above
    // the maximum (which always achieves FPR 0).
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i > 0 && sorted[i] == sorted[i - 1]) continue;
        const double at_or_above = n - static_cast<double>(i);
        if (at_or_above / n <= target_fpr) return sorted[i];
    }
    return std::nextafter(sorted.back(), std::numeric_limits<double>::infinity());
}

double tpr_at_threshold(std::span<const double> malicious_scores, double threshold) {
    if (malicious_scores.empty()) throw std::invalid_argument("malicious score set is empty");
    std::size_t hits = 0;
    for (double s : malicious_scores)
        if (s >= threshold) ++hits;
    return static_cast<double>(hits) / static_cast<double>(malicious_scores.size());
}

void write_roc_csv(const RocCurve& roc, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open ROC CSV for write: " + path.string());
    out << "fpr,tpr,threshold\n";
    char buf[128];
    for (const auto& p : roc.points) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", p.fpr, p.tpr, p.threshold);
        out << buf;
    }
}

std::string calibration_to_json(const CalibrationResult& result) {
    nlohmann::json obj{{"target_fpr", result.target_fpr},
                       {"threshold", result.threshold},
                       {"achieved_fpr_on_benign", result.achieved_fpr_on_benign}};
    if (result.tpr_on_test) obj["tpr_on_test"] = *result.tpr_on_test;
    return obj.dump();
}

} // namespace ascan::eval
