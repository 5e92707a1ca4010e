#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "sama/frame.hpp"

namespace sama {

/// Decodes a PNG (8/16-bit gray, RGB, RGBA or palette; alpha dropped, 16-bit
/// truncated to its high byte) or a binary PPM (P6, maxval 255) by sniffing
/// the leading bytes.
///
/// Throws IoError when the file cannot be read, UnsupportedFormat for other
/// formats and CorruptFile for truncated or malformed payloads.
FrameBuffer load_image(const std::filesystem::path& path);

FrameBuffer decode_image(std::span<const std::uint8_t> bytes);
FrameBuffer decode_ppm(std::span<const std::uint8_t> bytes);
FrameBuffer decode_png(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> encode_ppm(const FrameBuffer& frame);
std::vector<std::uint8_t> encode_png(const FrameBuffer& frame);

/// Binary 8-bit graymap (P5).
std::vector<std::uint8_t> encode_pgm(int height, int width, std::span<const std::uint8_t> gray);

/// Writes PNG for a ".png" extension and PPM otherwise.
void save_image(const FrameBuffer& frame, const std::filesystem::path& path);

/// Writes `bytes` to a sibling temp file and renames it over `path`, so a
/// failed write never leaves a partial file behind. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);

}  // namespace sama
