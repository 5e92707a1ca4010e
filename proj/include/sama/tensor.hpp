#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "sama/config.hpp"
#include "sama/frame.hpp"

namespace sama {

enum class MediaKind : std::uint8_t { Image = 1, Video = 2 };

/// Where one output pixel was copied from.
struct ProvenanceEntry {
  std::uint8_t scale_id = 0;
  std::uint16_t src_frame = 0;
  std::uint32_t src_y = 0;
  std::uint32_t src_x = 0;
  friend bool operator==(const ProvenanceEntry&, const ProvenanceEntry&) = default;
};

/// Packed sampler output: `frames` RGB8 frames of height x width, frame-major,
/// plus the metadata needed to interpret them and optional per-pixel
/// provenance (same order as the pixels).
struct SampledTensor {
  MediaKind kind = MediaKind::Image;
  int height = 0;
  int width = 0;
  int frames = 1;
  int n_scales = 1;
  SpatialMaskKind spatial_mask = SpatialMaskKind::None;
  TemporalMaskKind temporal_mask = TemporalMaskKind::None;
  std::uint64_t seed = 0;
  /// Scale id per frame pair; empty for images.
  std::vector<std::uint8_t> schedule;
  std::vector<std::uint8_t> data;
  std::optional<std::vector<ProvenanceEntry>> provenance;

  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(height) * width * static_cast<std::size_t>(frames);
  }
  std::size_t pixel_index(int t, int y, int x) const noexcept {
    return (static_cast<std::size_t>(t) * height + y) * width + x;
  }
  /// Copy of frame t as a FrameBuffer.
  FrameBuffer frame(int t) const;

  /// Throws InvariantViolation when sizes disagree.
  void check_consistency() const;

  friend bool operator==(const SampledTensor&, const SampledTensor&) = default;
};

}  // namespace sama
