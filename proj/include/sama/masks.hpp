#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sama/config.hpp"
#include "sama/fragments.hpp"
#include "sama/tensor.hpp"

namespace sama {

/// Tile edge of a spatial mask: the attention window (32) or the embedding
/// patch (4). Zero for SpatialMaskKind::None.
int spatial_block_size(SpatialMaskKind kind) noexcept;

/// Two-scale spatial mask. bitmap 1 selects the raw scale, 0 the coarse one.
/// Tiles form a checkerboard with tile (0, 0) raw.
struct SpatialMask {
  SpatialMaskKind kind = SpatialMaskKind::Window;
  int block = 32;
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> bitmap;

  std::uint8_t at(int y, int x) const noexcept { return bitmap[static_cast<std::size_t>(y) * width + x]; }
  std::size_t count_ones() const noexcept;
  /// All pixels set to `value` (test override of the pattern).
  static SpatialMask uniform(int height, int width, std::uint8_t value);
};

/// Throws IndivisibleDims unless both dims are multiples of the block.
SpatialMask make_spatial_mask(SpatialMaskKind kind, int out_h, int out_w);

/// Multi-valued mask: one scale id per output pixel.
struct ScaleIndexMask {
  int height = 0;
  int width = 0;
  int n_scales = 1;
  std::vector<std::uint8_t> ids;

  std::uint8_t at(int y, int x) const noexcept { return ids[static_cast<std::size_t>(y) * width + x]; }
  /// 0/1 field marking the pixels owned by `scale`.
  std::vector<std::uint8_t> indicator(int scale) const;
  /// Pixels owned by each scale.
  std::vector<std::size_t> counts() const;

  static ScaleIndexMask uniform(int height, int width, int n_scales, std::uint8_t scale);
  /// 1 -> raw_scale, 0 -> coarse_scale.
  static ScaleIndexMask from_spatial(const SpatialMask& mask, std::uint8_t raw_scale, std::uint8_t coarse_scale,
                                     int n_scales);
};

/// Bayer-style interlace of 3 or 4 scales over block x block tiles, repeating
/// the 2x2 super-pattern [[0,1],[2,3]] (4 scales) or [[0,1],[1,2]] (3 scales).
/// Odd tile counts cut the last super-pattern short. Throws BadArity for other
/// scale counts and IndivisibleDims unless both dims are multiples of block.
ScaleIndexMask make_interlace_mask(int n_scales, int out_h, int out_w, int block);

/// Pyramid level per frame pair.
struct TemporalMask {
  TemporalMaskKind kind = TemporalMaskKind::Progressive;
  int n_levels = 1;
  std::vector<std::uint8_t> schedule;

  int frames() const noexcept { return static_cast<int>(schedule.size()) * 2; }
  /// Scale id of every frame: schedule[f / 2].
  std::vector<std::uint8_t> per_frame() const;
};

/// progressive: [0, 1, ..., T/2-1], needs n_levels == T/2.
/// choppy: [0, 1, 0, 1, ...] (finest, coarsest), needs n_levels == 2.
/// mixed: [0..T/4-1] twice, needs n_levels == T/4.
/// Throws BadArity for odd T, kind None, or a level count the kind cannot use.
TemporalMask make_temporal_mask(TemporalMaskKind kind, int frames, int n_levels);

/// Two-scale select: mask 1 takes m0, 0 takes m1. Image tensors use frame 0
/// of each mosaic. Throws DimMismatch on size disagreement.
SampledTensor compose_spatial(const FragmentMosaic& m0, const FragmentMosaic& m1, const SpatialMask& mask);

/// Per-pixel select among mosaics indexed by scale id.
SampledTensor compose_indexed(std::span<const FragmentMosaic> by_scale, const ScaleIndexMask& mask);

/// Output frames (2k, 2k+1) are frames (2k, 2k+1) of the mosaic at level
/// schedule[k]. `by_level[i]` must be the level-i mosaic clip.
SampledTensor compose_temporal(std::span<const FragmentMosaic> by_level, const TemporalMask& mask);

}  // namespace sama
