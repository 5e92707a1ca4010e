#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "sama/tensor.hpp"

namespace sama {

/// Binary container layout, all integers little-endian:
///
///   "SAMA" | version u16 (=1) | kind u8 (1 image, 2 video) | H u32 | W u32 | T u32
///   | n_scales u8 | spatial_mask u8 | temporal_mask u8 | seed u64
///   | schedule_len u16 | schedule bytes | flags u8 (bit0: provenance present)
///   | RGB8 frames, row-major, frame-major
///   | [provenance: per pixel u8 scale_id, u16 src_frame, u32 src_y, u32 src_x]
inline constexpr std::uint16_t kContainerVersion = 1;
inline constexpr std::size_t kContainerFixedHeaderBytes = 33;
inline constexpr std::size_t kProvenanceEntryBytes = 11;

std::vector<std::uint8_t> serialize_container(const SampledTensor& tensor);

/// Throws UnsupportedFormat for a foreign magic or version, CorruptFile for
/// truncated, oversized or inconsistent data.
SampledTensor parse_container(std::span<const std::uint8_t> bytes);

/// Atomic write (temp file + rename). Throws IoError.
void write_container(const SampledTensor& tensor, const std::filesystem::path& path);
SampledTensor read_container(const std::filesystem::path& path);

}  // namespace sama
