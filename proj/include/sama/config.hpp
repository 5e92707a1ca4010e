#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sama {

enum class SpatialMaskKind : std::uint8_t { None = 0, Window = 1, Patch = 2 };
enum class TemporalMaskKind : std::uint8_t { None = 0, Progressive = 1, Choppy = 2, Mixed = 3 };
enum class OffsetPolicy : std::uint8_t { Random = 0, Center = 1 };

std::string_view to_string(SpatialMaskKind kind) noexcept;
std::string_view to_string(TemporalMaskKind kind) noexcept;
std::string_view to_string(OffsetPolicy policy) noexcept;

std::optional<SpatialMaskKind> parse_spatial_mask(std::string_view text) noexcept;
std::optional<TemporalMaskKind> parse_temporal_mask(std::string_view text) noexcept;
std::optional<OffsetPolicy> parse_offset_policy(std::string_view text) noexcept;

struct SamplerConfig {
  int grid_rows = 7;
  int grid_cols = 7;
  int frag_h = 32;
  int frag_w = 32;
  int frames_out = 32;  // video only
  int n_scales = 16;    // total pyramid levels including the raw one
  SpatialMaskKind spatial_mask = SpatialMaskKind::None;
  TemporalMaskKind temporal_mask = TemporalMaskKind::Progressive;
  OffsetPolicy offset_policy = OffsetPolicy::Center;
  std::uint64_t seed = 0;
  /// Draw the same cell-relative offset at every pyramid level instead of
  /// independent ones.
  bool aligned_offsets = false;

  int out_height() const noexcept { return grid_rows * frag_h; }
  int out_width() const noexcept { return grid_cols * frag_w; }
  /// Min-side of the coarsest pyramid level.
  int target_min_side() const noexcept;

  /// 8x8 grid of 32x32 fragments (256x256), two scales, window mask.
  static SamplerConfig image_defaults();
  /// 7x7 grid of 32x32 fragments (224x224), 32 frames, 16 scales, progressive.
  static SamplerConfig video_defaults();
};

/// Non-fatal remarks about a configuration that passed validation.
struct ConfigReport {
  std::vector<std::string> warnings;
};

/// Validates field ranges and mask/scale arity. `video` enables the temporal
/// checks. Throws Error(InvalidConfig) on the first violation.
ConfigReport validate(const SamplerConfig& config, bool video);

/// Number of pyramid levels a temporal mask needs for `frames_out` frames
/// (T/2 progressive, 2 choppy, T/4 mixed, 1 none).
int required_scales(TemporalMaskKind kind, int frames_out) noexcept;

}  // namespace sama
