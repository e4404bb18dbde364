#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "ascan/errors.hpp"
#include "ascan/featex.hpp"

namespace ascan::featex {

/// In-memory image of a feature store file.
struct FeatureStore {
    std::uint32_t dim = 0;
    std::vector<std::vector<float>> rows;
    std::vector<std::uint8_t> labels;       // 0 benign, 1 malicious
    std::vector<std::int64_t> timestamps;   // first_seen, unix seconds
};

/// Binary layout, little-endian: magic "MEADFV01", u32 dim, u64 count, then
/// per record dim*f32 values, u8 label, i64 first_seen.
void write_feature_store(const std::vector<FeatureVector>& vectors,
                         const std::vector<std::uint8_t>& labels,
                         const std::vector<std::int64_t>& timestamps,
                         const std::filesystem::path& path);

void write_feature_store(const FeatureStore& store, const std::filesystem::path& path);

/// Throws BadMagic, VersionMismatch, TruncatedStore.
FeatureStore read_feature_store(const std::filesystem::path& path);

} // namespace ascan::featex
