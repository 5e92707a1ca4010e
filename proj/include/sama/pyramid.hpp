#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sama/config.hpp"
#include "sama/frame.hpp"

namespace sama {

struct LevelSize {
  int height = 0;
  int width = 0;
  friend bool operator==(const LevelSize&, const LevelSize&) = default;
};

/// Per-level target dimensions, level 0 first.
using ScaleSchedule = std::vector<LevelSize>;

/// Linear min-side schedule from the raw frame down to `target_min`.
///
/// Level k has min-side round(raw_min + k * (target_min - raw_min) / (levels - 1))
/// and the other side round(min_side * raw_max / raw_min), both rounded half
/// up in exact integer arithmetic. Level 0 is the raw size and the last level
/// has min-side == target_min. A single level is just the raw size.
///
/// Throws InputTooSmall when min(raw_h, raw_w) < target_min.
ScaleSchedule scale_schedule(int raw_h, int raw_w, int target_min, int levels);

/// Smallest min-side whose aspect-preserving size is at least out_h x out_w.
/// Equals min(out_h, out_w) whenever the output is square.
int covering_min_side(int raw_h, int raw_w, int out_h, int out_w);

/// Bilinear resampling with half-pixel centers: output pixel (y, x) samples
/// the source at ((y + 0.5) * in_h / out_h - 0.5, ...) clamped to the frame.
/// Channels are independent; results are rounded half up.
FrameBuffer bilinear_resize(const FrameBuffer& frame, int out_h, int out_w);

/// Size after upscaling so that the min-side reaches target_min, or the
/// input size when it already does.
LevelSize upscaled_size(int height, int width, int target_min) noexcept;

FrameBuffer upscale_if_small(const FrameBuffer& frame, int target_min);
MediaClip upscale_if_small(const MediaClip& clip, int target_min);

/// One level of the pyramid. Frames may be absent when the level was built
/// sparsely (only the frames a temporal schedule reads are resampled).
class PyramidLevel {
 public:
  PyramidLevel(int scale_id, LevelSize size, std::vector<std::optional<FrameBuffer>> frames);

  int scale_id() const noexcept { return scale_id_; }
  int height() const noexcept { return size_.height; }
  int width() const noexcept { return size_.width; }
  LevelSize size() const noexcept { return size_; }
  std::size_t frame_count() const noexcept { return frames_.size(); }
  bool has_frame(std::size_t i) const noexcept { return i < frames_.size() && frames_[i].has_value(); }
  /// Throws InvariantViolation when the frame was not materialized.
  const FrameBuffer& frame(std::size_t i) const;

 private:
  int scale_id_;
  LevelSize size_;
  std::vector<std::optional<FrameBuffer>> frames_;
};

using Pyramid = std::vector<PyramidLevel>;

/// demand[level][frame] selects which frames of a level get resampled.
/// Level 0 always shares the input frames.
using FrameDemand = std::vector<std::vector<bool>>;

/// Upscales small inputs, then resizes the input to each scheduled level.
/// Level 0 shares the (possibly upscaled) input pixels without resampling.
Pyramid build_pyramid(const FrameBuffer& image, const SamplerConfig& config);
Pyramid build_pyramid(const MediaClip& clip, const SamplerConfig& config);
Pyramid build_pyramid(const MediaClip& clip, const SamplerConfig& config, const FrameDemand& demand);

}  // namespace sama
