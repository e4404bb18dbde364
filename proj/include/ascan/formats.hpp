#pragma once

#include <cstdint>
#include <vector>

#include "ascan/bytes.hpp"
#include "ascan/errors.hpp"

namespace ascan::formats {

enum class FileFormat { Ole2, Zip, Other };

/// One central-directory entry. Names are kept as raw bytes; Zip name
/// encoding is ambiguous and downstream consumers hash bytes anyway.
struct CdEntry {
    Bytes name;
    std::uint64_t compressed_size = 0;
    std::uint64_t uncompressed_size = 0;
    std::uint64_t local_header_offset = 0;
    std::uint32_t crc32 = 0;
};

struct CentralDirectoryView {
    Bytes cd_bytes;                 // the contiguous span [cd_start, eocd_offset)
    std::vector<CdEntry> entries;
    std::size_t eocd_offset = 0;
    std::size_t total_entries = 0;
};

// Zip wire constants (little-endian on disk).
inline constexpr std::uint32_t kEocdSignature = 0x06054b50;
inline constexpr std::uint32_t kCdEntrySignature = 0x02014b50;
inline constexpr std::uint32_t kLocalHeaderSignature = 0x04034b50;
inline constexpr std::uint32_t kZip64EocdSignature = 0x06064b50;
inline constexpr std::uint32_t kZip64LocatorSignature = 0x07064b50;

/// Classifies by leading magic bytes only.
FileFormat detect_format(ByteSpan bytes);

/// Offset of the end-of-central-directory record: the last signature within
/// the final min(len, 22+65535) bytes whose comment length reaches file end.
/// Throws NoEocd.
std::size_t locate_eocd(ByteSpan bytes);

/// Walks the central directory declared by the EOCD record.
/// Throws NoEocd, Unsupported (Zip64), TruncatedCd, BadSignature, CountMismatch.
CentralDirectoryView parse_central_directory(ByteSpan bytes);

/// Final min(len, cap) bytes, as a view (no copy).
ByteSpan tail_bytes(ByteSpan bytes, std::size_t cap = 1048576);

} // namespace ascan::formats
