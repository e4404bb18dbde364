#include "ascan/featex.hpp"

#include <array>
#include <cmath>

#include "ascan/formats.hpp"

namespace ascan::featex {

namespace {

void l1_normalize(std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    if (sum <= 0.0) return;
    for (double& x : v) x /= sum;
}

template <class Fn>
void for_each_window(ByteSpan bytes, const FeatureConfig& cfg, Fn&& fn) {
    const std::size_t n = bytes.size();
    if (n == 0) return;
    if (n < cfg.window) {
        fn(bytes);
        return;
    }
    for (std::size_t off = 0; off + cfg.window <= n; off += cfg.stride)
        fn(bytes.subspan(off, cfg.window));
}

std::size_t clamp_bin(double scaled, std::size_t grid) {
    if (scaled <= 0.0) return 0;
    const auto bin = static_cast<std::size_t>(scaled);
    return bin >= grid ? grid - 1 : bin;
}

bool is_token_byte(std::uint8_t c) {
    if (c < 0x20 || c > 0x7E) return false;
    switch (c) {
    case ' ':
    case '<':
    case '>':
    case '/':
    case '\\': return false;
    default: return true;
    }
}

} // namespace

std::uint64_t fnv1a64(ByteSpan bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (std::uint8_t b : bytes) {
        hash ^= b;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

std::vector<double> byte_entropy_histogram(ByteSpan bytes, const FeatureConfig& cfg) {
    const std::size_t grid = cfg.entropy_grid;
    std::vector<double> hist(grid * grid, 0.0);
    const std::size_t byte_div = 256 / grid;

    for_each_window(bytes, cfg, [&](ByteSpan win) {
        std::array<std::uint32_t, 256> counts{};
        for (std::uint8_t b : win) ++counts[b];

        double entropy = 0.0;
        const double inv = 1.0 / static_cast<double>(win.size());
        for (std::uint32_t c : counts) {
            if (c == 0) continue;
            const double p = static_cast<double>(c) * inv;
            entropy -= p * std::log2(p);
        }
        const std::size_t ebin = clamp_bin(entropy * static_cast<double>(grid) / 8.0, grid);
        for (std::uint8_t b : win) hist[(b / byte_div) * grid + ebin] += 1.0;
    });

    l1_normalize(hist);
    return hist;
}

std::vector<double> byte_meanstd_histogram(ByteSpan bytes, const FeatureConfig& cfg) {
    const std::size_t grid = cfg.meanstd_grid;
    std::vector<double> hist(grid * grid, 0.0);

    for_each_window(bytes, cfg, [&](ByteSpan win) {
        std::uint64_t sum = 0, sumsq = 0;
        for (std::uint8_t b : win) {
            sum += b;
            sumsq += static_cast<std::uint64_t>(b) * b;
        }
        const double n = static_cast<double>(win.size());
        const double mean = static_cast<double>(sum) / n;
        const double var = static_cast<double>(sumsq) / n - mean * mean;
        const double sd = std::sqrt(var > 0.0 ? var : 0.0);

        const std::size_t mbin = clamp_bin(mean * static_cast<double>(grid) / 256.0, grid);
        const std::size_t sbin = clamp_bin(sd * static_cast<double>(grid) / 128.0, grid);
        hist[mbin * grid + sbin] += 1.0;
    });

    l1_normalize(hist);
    return hist;
}

std::vector<double> string_length_hash(ByteSpan bytes, const FeatureConfig& cfg) {
    const std::size_t scales = cfg.string_scales;
    const std::size_t bins = cfg.string_hash_bins;
    std::vector<double> hist(scales * bins, 0.0);

    const double ln_min = std::log(static_cast<double>(cfg.string_min_len));
    const double ln_denom =
        std::log(static_cast<double>(cfg.string_max_len) + 1.0) - ln_min;
    const double lin_denom =
        static_cast<double>(cfg.string_max_len + 1 - cfg.string_min_len);

    const std::size_t n = bytes.size();
    std::size_t i = 0;
    while (i < n) {
        if (!is_token_byte(bytes[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < n && is_token_byte(bytes[j])) ++j;
        const std::size_t len = j - i;
        if (len >= cfg.string_min_len && len <= cfg.string_max_len) {
            std::size_t scale;
            if (cfg.string_log_buckets) {
                const double t = (std::log(static_cast<double>(len)) - ln_min) / ln_denom;
                scale = clamp_bin(t * static_cast<double>(scales), scales);
            } else {
                const double t = static_cast<double>(len - cfg.string_min_len) / lin_denom;
                scale = clamp_bin(t * static_cast<double>(scales), scales);
            }
            const std::size_t bin = fnv1a64(bytes.subspan(i, len)) % bins;
            hist[scale * bins + bin] += 1.0;
        }
        i = j;
    }

    if (cfg.string_log1p)
        for (double& x : hist) x = std::log1p(x);
    l1_normalize(hist);
    return hist;
}

std::vector<double> ngram_hash_histogram(ByteSpan bytes, const FeatureConfig& cfg) {
    std::vector<double> hist(cfg.ngram_dims, 0.0);
    for (std::size_t gram : cfg.ngram_sizes) {
        if (bytes.size() < gram) continue;
        for (std::size_t off = 0; off + gram <= bytes.size(); ++off)
            hist[fnv1a64(bytes.subspan(off, gram)) % cfg.ngram_dims] += 1.0;
    }
    l1_normalize(hist);
    return hist;
}

namespace {

void append_block(FeatureVector& fv, const std::string& name, std::vector<double> block) {
    fv.layout.push_back({name, fv.values.size(), block.size()});
    fv.values.insert(fv.values.end(), block.begin(), block.end());
}

FeatureConfig document_string_cfg(const FeatureConfig& base) {
    FeatureConfig cfg = base;
    cfg.string_scales = 16;
    cfg.string_hash_bins = 64;
    cfg.string_min_len = 5;
    cfg.string_max_len = 128;
    return cfg;
}

FeatureConfig archive_string_cfg(const FeatureConfig& base) {
    FeatureConfig cfg = document_string_cfg(base);
    cfg.string_min_len = 2;
    return cfg;
}

} // namespace

FeatureVector document_features(ByteSpan bytes, const FeatureConfig& base) {
    FeatureConfig grid16 = base;
    grid16.entropy_grid = 16;
    grid16.meanstd_grid = 16;

    FeatureVector fv;
    append_block(fv, "string", string_length_hash(bytes, document_string_cfg(base)));
    append_block(fv, "entropy", byte_entropy_histogram(bytes, grid16));
    append_block(fv, "meanstd", byte_meanstd_histogram(bytes, grid16));
    return fv;
}

FeatureVector archive_features(ByteSpan bytes, const FeatureConfig& base) {
    if (formats::detect_format(bytes) != formats::FileFormat::Zip)
        throw NotAnArchive("leading magic is not a Zip signature");
    const auto cd = formats::parse_central_directory(bytes);
    const ByteSpan tail = formats::tail_bytes(bytes, 1048576);

    FeatureConfig grid32 = base;
    grid32.entropy_grid = 32;
    FeatureConfig ngram_cfg = base;
    ngram_cfg.ngram_sizes = {3, 4, 5, 6};
    ngram_cfg.ngram_dims = 1024;
    const FeatureConfig string_cfg = archive_string_cfg(base);

    FeatureVector fv;
    append_block(fv, "cd_string", string_length_hash(cd.cd_bytes, string_cfg));
    append_block(fv, "cd_entropy", byte_entropy_histogram(cd.cd_bytes, grid32));
    append_block(fv, "cd_ngram", ngram_hash_histogram(cd.cd_bytes, ngram_cfg));
    append_block(fv, "tail_entropy", byte_entropy_histogram(tail, grid32));
    append_block(fv, "tail_string", string_length_hash(tail, string_cfg));
    return fv;
}

std::size_t document_dims() { return 1536; }
std::size_t archive_dims() { return 5120; }

std::vector<Block> document_layout() {
    return {{"string", 0, 1024}, {"entropy", 1024, 256}, {"meanstd", 1280, 256}};
}

std::vector<Block> archive_layout() {
    return {{"cd_string", 0, 1024},
            {"cd_entropy", 1024, 1024},
            {"cd_ngram", 2048, 1024},
            {"tail_entropy", 3072, 1024},
            {"tail_string", 4096, 1024}};
}

} // namespace ascan::featex
