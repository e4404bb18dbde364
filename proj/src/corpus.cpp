#include "ascan/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

namespace ascan::corpus {

using nlohmann::json;

Label aggregate_label(std::uint32_t vendors_malicious) {
    if (vendors_malicious <= 1) return Label::Benign;
    if (vendors_malicious >= 5) return Label::Malicious;
    return Label::Indeterminate;
}

const char* label_name(Label label) {
    switch (label) {
    case Label::Benign: return "benign";
    case Label::Malicious: return "malicious";
    case Label::Indeterminate: return "indeterminate";
    }
    return "?";
}

IndexSplit time_split_indices(std::span<const std::int64_t> first_seen, double train_fraction) {
    if (first_seen.empty()) throw DegenerateSplit("no records to split");
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw std::invalid_argument("train_fraction must be in (0,1)");

    std::vector<std::int64_t> times(first_seen.begin(), first_seen.end());
    std::sort(times.begin(), times.end());

    const double n = static_cast<double>(times.size());
    // Tiny slack keeps ceil() honest when fraction*N is an integer that the
    // product only approximates from above.
    auto rank = static_cast<std::size_t>(std::ceil(train_fraction * n - 1e-9));
    rank = std::clamp<std::size_t>(rank, 1, times.size());

    IndexSplit out;
    out.threshold_time = times[rank - 1];
    for (std::size_t i = 0; i < first_seen.size(); ++i) {
        if (first_seen[i] <= out.threshold_time)
            out.train.push_back(i);
        else
            out.test.push_back(i);
    }
    if (out.test.empty())
        throw DegenerateSplit("all records fall at or before the threshold time");
    return out;
}

SplitResult time_split(const std::vector<SampleRecord>& records, double train_fraction) {
    std::vector<std::int64_t> times;
    times.reserve(records.size());
    for (const auto& r : records) times.push_back(r.first_seen);
    const IndexSplit idx = time_split_indices(times, train_fraction);

    SplitResult out;
    out.threshold_time = idx.threshold_time;
    out.train.reserve(idx.train.size());
    out.test.reserve(idx.test.size());
    for (std::size_t i : idx.train) out.train.push_back(records[i]);
    for (std::size_t i : idx.test) out.test.push_back(records[i]);
    return out;
}

namespace {

bool is_hex_digest(const std::string& s) {
    if (s.size() != 64) return false;
    for (char c : s) {
        const bool ok = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
        if (!ok) return false;
    }
    return true;
}

bool blank(const std::string& line) {
    return std::all_of(line.begin(), line.end(),
                       [](unsigned char c) { return std::isspace(c) != 0; });
}

std::int64_t require_int(const json& obj, const char* key, std::size_t lineno) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(std::string("missing key '") + key + "'", lineno);
    if (!it->is_number_integer())
        throw ParseError(std::string("key '") + key + "' must be an integer", lineno);
    return it->get<std::int64_t>();
}

std::string require_string(const json& obj, const char* key, std::size_t lineno) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(std::string("missing key '") + key + "'", lineno);
    if (!it->is_string())
        throw ParseError(std::string("key '") + key + "' must be a string", lineno);
    return it->get<std::string>();
}

} // namespace

std::vector<SampleRecord> load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open manifest: " + path.string(), 0);

    std::vector<SampleRecord> out;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line)) continue;

        const json obj = json::parse(line, nullptr, /*allow_exceptions=*/false);
        if (obj.is_discarded() || !obj.is_object())
            throw ParseError("malformed JSON object", lineno);

        SampleRecord rec;
        rec.sha256 = require_string(obj, "sha256", lineno);
        if (!is_hex_digest(rec.sha256))
            throw ParseError("sha256 must be 64 lowercase hex chars", lineno);
        rec.path = require_string(obj, "path", lineno);
        rec.first_seen = require_int(obj, "first_seen", lineno);

        const std::int64_t vm = require_int(obj, "vendors_malicious", lineno);
        const std::int64_t vt = require_int(obj, "vendors_total", lineno);
        if (vm < 0 || vt < 0) throw ParseError("vendor counts must be nonnegative", lineno);
        if (vm > vt) throw ParseError("vendors_malicious exceeds vendors_total", lineno);
        rec.vendors_malicious = static_cast<std::uint32_t>(vm);
        rec.vendors_total = static_cast<std::uint32_t>(vt);
        rec.label = aggregate_label(rec.vendors_malicious);

        if (!seen.insert(rec.sha256).second)
            throw DuplicateSample("duplicate sha256 at line " + std::to_string(lineno) + ": " +
                                  rec.sha256);
        out.push_back(std::move(rec));
    }
    return out;
}

void write_manifest(const std::vector<SampleRecord>& records,
                    const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open manifest for write: " + path.string());
    for (const auto& r : records) {
        json obj{{"sha256", r.sha256},
                 {"path", r.path},
                 {"first_seen", r.first_seen},
                 {"vendors_malicious", r.vendors_malicious},
                 {"vendors_total", r.vendors_total}};
        out << obj.dump() << '\n';
    }
}

} // namespace ascan::corpus
