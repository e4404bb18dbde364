#include "ascan/store.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace ascan::featex {

namespace {

constexpr char kMagic[8] = {'M', 'E', 'A', 'D', 'F', 'V', '0', '1'};

static_assert(std::endian::native == std::endian::little,
              "store IO assumes a little-endian host");

template <class T>
void put(std::ofstream& out, T value) {
    char buf[sizeof(T)];
    std::memcpy(buf, &value, sizeof(T));
    out.write(buf, sizeof(T));
}

template <class T>
bool get(std::ifstream& in, T& value) {
    char buf[sizeof(T)];
    in.read(buf, sizeof(T));
    if (in.gcount() != static_cast<std::streamsize>(sizeof(T))) return false;
    std::memcpy(&value, buf, sizeof(T));
    return true;
}

} // namespace

void write_feature_store(const std::vector<FeatureVector>& vectors,
                         const std::vector<std::uint8_t>& labels,
                         const std::vector<std::int64_t>& timestamps,
                         const std::filesystem::path& path) {
    FeatureStore store;
    store.dim = vectors.empty() ? 0u : static_cast<std::uint32_t>(vectors.front().values.size());
    store.rows.reserve(vectors.size());
    for (const auto& fv : vectors) {
        if (fv.values.size() != store.dim)
            throw ShapeMismatch("feature vectors of differing length in one store");
        std::vector<float> row(fv.values.size());
        for (std::size_t i = 0; i < row.size(); ++i)
            row[i] = static_cast<float>(fv.values[i]);
        store.rows.push_back(std::move(row));
    }
    store.labels = labels;
    store.timestamps = timestamps;
    write_feature_store(store, path);
}

void write_feature_store(const FeatureStore& store, const std::filesystem::path& path) {
    if (store.rows.size() != store.labels.size() || store.rows.size() != store.timestamps.size())
        throw ShapeMismatch("store rows, labels and timestamps must align");

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open store for write: " + path.string());

    out.write(kMagic, sizeof(kMagic));
    put<std::uint32_t>(out, store.dim);
    put<std::uint64_t>(out, store.rows.size());
    for (std::size_t i = 0; i < store.rows.size(); ++i) {
        const auto& row = store.rows[i];
        if (row.size() != store.dim) throw ShapeMismatch("row width differs from store dim");
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row.size() * sizeof(float)));
        put<std::uint8_t>(out, store.labels[i]);
        put<std::int64_t>(out, store.timestamps[i]);
    }
    if (!out) throw std::runtime_error("short write: " + path.string());
}

FeatureStore read_feature_store(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open store: " + path.string());

    char magic[8];
    in.read(magic, sizeof(magic));
    if (in.gcount() != sizeof(magic)) throw BadMagic("store shorter than its magic");
    if (std::memcmp(magic, kMagic, 6) != 0) throw BadMagic("not a feature store");
    if (std::memcmp(magic, kMagic, 8) != 0)
        throw VersionMismatch("unsupported store version " + std::string(magic + 6, 2));

    FeatureStore store;
    std::uint64_t count = 0;
    if (!get(in, store.dim) || !get(in, count))
        throw TruncatedStore("store header incomplete");

    store.rows.reserve(count);
    store.labels.reserve(count);
    store.timestamps.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        std::vector<float> row(store.dim);
        in.read(reinterpret_cast<char*>(row.data()),
                static_cast<std::streamsize>(row.size() * sizeof(float)));
        if (in.gcount() != static_cast<std::streamsize>(row.size() * sizeof(float)))
            throw TruncatedStore("record " + std::to_string(i) + " cut short");
        std::uint8_t label = 0;
        std::int64_t ts = 0;
        if (!get(in, label) || !get(in, ts))
            throw TruncatedStore("record " + std::to_string(i) + " cut short");
        store.rows.push_back(std::move(row));
        store.labels.push_back(label);
        store.timestamps.push_back(ts);
    }
    return store;
}

} // namespace ascan::featex
