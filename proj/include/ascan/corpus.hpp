#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "ascan/errors.hpp"

namespace ascan::corpus {

enum class Label { Benign, Malicious, Indeterminate };

/// One corpus file as listed in a manifest.
struct SampleRecord {
    std::string sha256;             // 64-char lowercase hex digest
    std::string path;               // filesystem path to the raw bytes
    std::int64_t first_seen = 0;    // unix seconds, UTC
    std::uint32_t vendors_malicious = 0;
    std::uint32_t vendors_total = 0;
    Label label = Label::Indeterminate;
};

struct SplitResult {
    std::vector<SampleRecord> train;
    std::vector<SampleRecord> test;
    std::int64_t threshold_time = 0;
};

/// Vendor-count label aggregation: <=1 benign, >=5 malicious, 2-4 indeterminate.
Label aggregate_label(std::uint32_t vendors_malicious);

/// Temporal split: threshold is the first_seen value at rank ceil(fraction*N)
/// (1-indexed, ascending). Records tied at the threshold go to train.
/// Throws DegenerateSplit if the test side would be empty.
SplitResult time_split(const std::vector<SampleRecord>& records, double train_fraction);

/// Same split rule over bare timestamps; returns row indices in input order.
struct IndexSplit {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
    std::int64_t threshold_time = 0;
};
IndexSplit time_split_indices(std::span<const std::int64_t> first_seen, double train_fraction);

/// Reads a UTF-8 JSON-lines manifest, one object per line. Unknown keys are
/// ignored. Throws ParseError (with line number) or DuplicateSample.
std::vector<SampleRecord> load_manifest(const std::filesystem::path& path);

/// Writes records back out as JSON-lines. load_manifest(write_manifest(r)) == r.
void write_manifest(const std::vector<SampleRecord>& records, const std::filesystem::path& path);

const char* label_name(Label label);

} // namespace ascan::corpus
