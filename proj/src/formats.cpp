#include "ascan/formats.hpp"

#include <algorithm>
#include <array>

namespace ascan::formats {

namespace {

constexpr std::array<std::uint8_t, 8> kOle2Magic = {0xD0, 0xCF, 0x11, 0xE0,
                                                    0xA1, 0xB1, 0x1A, 0xE1};

std::uint16_t read_u16(ByteSpan b, std::size_t off) {
    return static_cast<std::uint16_t>(b[off]) |
           static_cast<std::uint16_t>(static_cast<std::uint16_t>(b[off + 1]) << 8);
}

std::uint32_t read_u32(ByteSpan b, std::size_t off) {
    return static_cast<std::uint32_t>(b[off]) | (static_cast<std::uint32_t>(b[off + 1]) << 8) |
           (static_cast<std::uint32_t>(b[off + 2]) << 16) |
           (static_cast<std::uint32_t>(b[off + 3]) << 24);
}

bool starts_with(ByteSpan b, std::initializer_list<std::uint8_t> prefix) {
    if (b.size() < prefix.size()) return false;
    std::size_t i = 0;
    for (std::uint8_t p : prefix)
        if (b[i++] != p) return false;
    return true;
}

} // namespace

FileFormat detect_format(ByteSpan bytes) {
    if (bytes.size() >= kOle2Magic.size() &&
        std::equal(kOle2Magic.begin(), kOle2Magic.end(), bytes.begin()))
        return FileFormat::Ole2;
    if (starts_with(bytes, {0x50, 0x4B, 0x03, 0x04}) ||
        starts_with(bytes, {0x50, 0x4B, 0x05, 0x06}) ||
        starts_with(bytes, {0x50, 0x4B, 0x07, 0x08}))
        return FileFormat::Zip;
    return FileFormat::Other;
}

std::size_t locate_eocd(ByteSpan bytes) {
    constexpr std::size_t kEocdMin = 22;
    constexpr std::size_t kMaxComment = 65535;
    const std::size_t n = bytes.size();
    if (n < kEocdMin) throw NoEocd("input shorter than an EOCD record");

    const std::size_t window = std::min(n, kEocdMin + kMaxComment);
    const std::size_t lo = n - window;
    for (std::size_t off = n - kEocdMin + 1; off-- > lo;) {
        if (read_u32(bytes, off) != kEocdSignature) continue;
        const std::uint16_t comment_len = read_u16(bytes, off + 20);
        if (off + kEocdMin + comment_len == n) return off;
    }
    throw NoEocd("no consistent end-of-central-directory signature");
}

CentralDirectoryView parse_central_directory(ByteSpan bytes) {
    const std::size_t eocd = locate_eocd(bytes);

    if (eocd >= 20 && read_u32(bytes, eocd - 20) == kZip64LocatorSignature)
        throw Unsupported("Zip64 archive (EOCD64 locator present)");

    const std::uint16_t entries_this_disk = read_u16(bytes, eocd + 8);
    const std::uint16_t total_entries = read_u16(bytes, eocd + 10);
    const std::uint32_t cd_size = read_u32(bytes, eocd + 12);
    const std::uint32_t cd_offset = read_u32(bytes, eocd + 16);
    if (entries_this_disk == 0xFFFF || total_entries == 0xFFFF || cd_size == 0xFFFFFFFF ||
        cd_offset == 0xFFFFFFFF)
        throw Unsupported("Zip64 archive (sentinel EOCD fields)");

    if (static_cast<std::uint64_t>(cd_offset) + cd_size != eocd)
        throw TruncatedCd("central directory span does not end at the EOCD record");

    CentralDirectoryView view;
    view.eocd_offset = eocd;
    view.total_entries = total_entries;
    view.cd_bytes.assign(bytes.begin() + static_cast<std::ptrdiff_t>(cd_offset),
                         bytes.begin() + static_cast<std::ptrdiff_t>(eocd));

    constexpr std::size_t kEntryFixed = 46;
    std::size_t pos = cd_offset;
    while (pos < eocd) {
        if (eocd - pos < 4) throw TruncatedCd("trailing bytes shorter than a signature");
        if (read_u32(bytes, pos) != kCdEntrySignature)
            throw BadSignature("central-directory entry signature missing");
        if (eocd - pos < kEntryFixed) throw TruncatedCd("entry header crosses the EOCD record");

        const std::uint16_t name_len = read_u16(bytes, pos + 28);
        const std::uint16_t extra_len = read_u16(bytes, pos + 30);
        const std::uint16_t comment_len = read_u16(bytes, pos + 32);
        const std::size_t entry_end = pos + kEntryFixed + name_len + extra_len + comment_len;
        if (entry_end > eocd) throw TruncatedCd("entry payload crosses the EOCD record");

        CdEntry entry;
        entry.crc32 = read_u32(bytes, pos + 16);
        entry.compressed_size = read_u32(bytes, pos + 20);
        entry.uncompressed_size = read_u32(bytes, pos + 24);
        entry.local_header_offset = read_u32(bytes, pos + 42);
        entry.name.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos + kEntryFixed),
                          bytes.begin() + static_cast<std::ptrdiff_t>(pos + kEntryFixed + name_len));
        view.entries.push_back(std::move(entry));
        pos = entry_end;
    }

    if (view.entries.size() != view.total_entries)
        throw CountMismatch("walked " + std::to_string(view.entries.size()) +
                            " entries, EOCD declares " + std::to_string(view.total_entries));
    return view;
}

ByteSpan tail_bytes(ByteSpan bytes, std::size_t cap) {
    const std::size_t take = std::min(bytes.size(), cap);
    return bytes.subspan(bytes.size() - take, take);
}

} // namespace ascan::formats
