#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace ascan::rnd {

using Engine = std::mt19937_64;

// Uniform double in [0, 1) built from the top 53 bits of the engine output.
// std::uniform_real_distribution is implementation-defined, so we roll our own
// to keep seeded results identical across toolchains.
inline double uniform_unit(Engine& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, n) via rejection sampling.
inline std::uint64_t uniform_below(Engine& eng, std::uint64_t n) {
    const std::uint64_t threshold = (0ull - n) % n; // 2^64 mod n
    for (;;) {
        const std::uint64_t r = eng();
        if (r >= threshold) return r % n;
    }
}

// Portable Fisher-Yates shuffle.
template <class T>
void shuffle(std::vector<T>& v, Engine& eng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(uniform_below(eng, i));
        std::swap(v[i - 1], v[j]);
    }
}

// k distinct indices drawn from [0, n), returned in ascending order.
inline std::vector<std::uint32_t> sample_without_replacement(std::size_t n, std::size_t k,
                                                             Engine& eng) {
    std::vector<std::uint32_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<std::uint32_t>(i);
    if (k > n) k = n;
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(uniform_below(eng, n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

} // namespace ascan::rnd
