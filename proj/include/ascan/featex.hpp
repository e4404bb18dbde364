#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ascan/bytes.hpp"
#include "ascan/errors.hpp"

namespace ascan::featex {

/// Knobs shared by the byte-stream extractors. The document/archive feature
/// plans pin their own dimensions; only windowing and the string-histogram
/// transform flags are honored everywhere.
struct FeatureConfig {
    std::size_t window = 1024;
    std::size_t stride = 256;

    std::size_t entropy_grid = 16;   // G; block length G*G
    std::size_t meanstd_grid = 16;

    std::size_t string_scales = 16;
    std::size_t string_hash_bins = 64;
    std::size_t string_min_len = 5;
    std::size_t string_max_len = 128;
    bool string_log_buckets = true;  // geometric length-bucket edges
    bool string_log1p = true;        // elementwise ln(1+x) before normalization

    std::vector<std::size_t> ngram_sizes = {3, 4, 5, 6};
    std::size_t ngram_dims = 1024;
};

struct Block {
    std::string name;
    std::size_t start = 0;
    std::size_t length = 0;
};

/// Fixed-length nonnegative vector with a declared block layout. Every block
/// is L1-normalized or all-zero.
struct FeatureVector {
    std::vector<double> values;
    std::vector<Block> layout;
};

std::uint64_t fnv1a64(ByteSpan bytes);

/// 2D histogram over (byte value, window entropy) pairs; length G*G,
/// flattened as byte_bin * G + entropy_bin. Sliding windows of cfg.window
/// bytes every cfg.stride; a short input is one whole-file window.
std::vector<double> byte_entropy_histogram(ByteSpan bytes, const FeatureConfig& cfg = {});

/// 2D histogram over per-window (mean, population std) pairs; one count per
/// window; length G*G flattened as mean_bin * G + std_bin.
std::vector<double> byte_meanstd_histogram(ByteSpan bytes, const FeatureConfig& cfg = {});

/// 2D histogram over (log length bucket, hash bin) of printable tokens,
/// length scales*bins; cell scale*bins + bin; ln(1+x) then L1 normalization.
std::vector<double> string_length_hash(ByteSpan bytes, const FeatureConfig& cfg = {});

/// Hashed 3/4/5/6-gram frequency histogram, L1-normalized.
std::vector<double> ngram_hash_histogram(ByteSpan bytes, const FeatureConfig& cfg = {});

/// Whole-file document plan: string(1024) ++ entropy(256) ++ meanstd(256).
FeatureVector document_features(ByteSpan bytes, const FeatureConfig& base = {});

/// Archive plan over the central directory and the final 1 MB:
/// cd_string ++ cd_entropy ++ cd_ngram ++ tail_entropy ++ tail_string, 5120 dims.
/// Throws NotAnArchive when the magic is not Zip; propagates formats errors.
FeatureVector archive_features(ByteSpan bytes, const FeatureConfig& base = {});

std::size_t document_dims();
std::size_t archive_dims();
std::vector<Block> document_layout();
std::vector<Block> archive_layout();

} // namespace ascan::featex
