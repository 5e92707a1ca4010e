#include "sama/pyramid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "sama/error.hpp"
#include "sama/parallel.hpp"

namespace sama {

namespace {

// round(num / den) with halves rounded up; num >= 0, den > 0.
std::int64_t div_round_half_up(std::int64_t num, std::int64_t den) { return (2 * num + den) / (2 * den); }

struct AxisTap {
  int i0;
  int i1;
  double w;  // weight of i1
};

std::vector<AxisTap> axis_taps(int in, int out) {
  std::vector<AxisTap> taps(out);
  const double scale = static_cast<double>(in) / out;
  for (int o = 0; o < out; ++o) {
    double src = (o + 0.5) * scale - 0.5;
    src = std::clamp(src, 0.0, static_cast<double>(in - 1));
    const int i0 = static_cast<int>(std::floor(src));
    const int i1 = std::min(i0 + 1, in - 1);
    taps[o] = {i0, i1, src - i0};
  }
  return taps;
}

// v is a convex combination of bytes, so only rounding error can leave [0, 255].
inline std::uint8_t to_byte(double v) {
  const int r = static_cast<int>(v + 0.5);
  return static_cast<std::uint8_t>(r < 0 ? 0 : (r > 255 ? 255 : r));
}

LevelSize level_size_for(int raw_h, int raw_w, std::int64_t min_side) {
  const bool h_is_min = raw_h <= raw_w;
  const std::int64_t raw_min = h_is_min ? raw_h : raw_w;
  const std::int64_t raw_max = h_is_min ? raw_w : raw_h;
  const auto other = static_cast<int>(div_round_half_up(min_side * raw_max, raw_min));
  return h_is_min ? LevelSize{static_cast<int>(min_side), other} : LevelSize{other, static_cast<int>(min_side)};
}

}  // namespace

int covering_min_side(int raw_h, int raw_w, int out_h, int out_w) {
  if (raw_h < 1 || raw_w < 1) throw Error(ErrorCode::InvariantViolation, "raw dimensions must be positive");
  const bool h_is_min = raw_h <= raw_w;
  const std::int64_t raw_min = h_is_min ? raw_h : raw_w;
  const std::int64_t raw_max = h_is_min ? raw_w : raw_h;
  const int need_min = h_is_min ? out_h : out_w;
  const int need_other = h_is_min ? out_w : out_h;
  std::int64_t m = std::max<std::int64_t>({need_min, 1, (need_other * raw_min + raw_max - 1) / raw_max - 1});
  for (;; ++m) {
    const auto size = level_size_for(raw_h, raw_w, m);
    if ((h_is_min ? size.width : size.height) >= need_other) return static_cast<int>(m);
  }
}

ScaleSchedule scale_schedule(int raw_h, int raw_w, int target_min, int levels) {
  if (raw_h < 1 || raw_w < 1) throw Error(ErrorCode::InvariantViolation, "raw dimensions must be positive");
  if (target_min < 1) throw Error(ErrorCode::InvalidConfig, "target min-side must be >= 1");
  if (levels < 1) throw Error(ErrorCode::InvalidConfig, "pyramid needs at least one level");
  const std::int64_t raw_min = std::min(raw_h, raw_w);
  if (raw_min < target_min) {
    throw Error(ErrorCode::InputTooSmall, "min-side " + std::to_string(raw_min) + " is below target " +
                                              std::to_string(target_min) + "; upscale first");
  }
  ScaleSchedule schedule;
  schedule.reserve(levels);
  schedule.push_back({raw_h, raw_w});
  const std::int64_t steps = levels - 1;
  for (std::int64_t k = 1; k < levels; ++k) {
    const std::int64_t min_side = div_round_half_up(raw_min * steps + k * (target_min - raw_min), steps);
    schedule.push_back(level_size_for(raw_h, raw_w, min_side));
  }
  return schedule;
}

FrameBuffer bilinear_resize(const FrameBuffer& frame, int out_h, int out_w) {
  if (out_h < 1 || out_w < 1) {
    throw Error(ErrorCode::InvalidConfig,
                "resize target must be positive, got " + std::to_string(out_h) + "x" + std::to_string(out_w));
  }
  if (out_h == frame.height() && out_w == frame.width()) return frame;

  const auto ytaps = axis_taps(frame.height(), out_h);
  const auto xtaps = axis_taps(frame.width(), out_w);
  const std::size_t row_len = static_cast<std::size_t>(out_w) * 3;

  // Horizontally resampled source rows, two slots keyed by source row.
  std::vector<double> slot_data[2] = {std::vector<double>(row_len), std::vector<double>(row_len)};
  int slot_row[2] = {-1, -1};
  // returns the slot index; `keep` is never evicted
  auto hrow = [&](int y, int keep) -> int {
    for (int s = 0; s < 2; ++s) {
      if (slot_row[s] == y) return s;
    }
    const int s = keep == 0 ? 1 : 0;
    slot_row[s] = y;
    double* buf = slot_data[s].data();
    const std::uint8_t* r = frame.row(y);
    for (const auto& tx : xtaps) {
      const std::uint8_t* p0 = r + tx.i0 * 3;
      const std::uint8_t* p1 = r + tx.i1 * 3;
      const double wx = tx.w;
      buf[0] = p0[0] + wx * (p1[0] - p0[0]);
      buf[1] = p0[1] + wx * (p1[1] - p0[1]);
      buf[2] = p0[2] + wx * (p1[2] - p0[2]);
      buf += 3;
    }
    return s;
  };

  std::vector<std::uint8_t> out(static_cast<std::size_t>(out_h) * row_len);
  std::uint8_t* dst = out.data();
  for (const auto& ty : ytaps) {
    const int st = hrow(ty.i0, -1);
    const int sb = hrow(ty.i1, st);
    const double* top = slot_data[st].data();
    const double* bottom = slot_data[sb].data();
    const double wy = ty.w;
    for (std::size_t i = 0; i < row_len; ++i) *dst++ = to_byte(top[i] + wy * (bottom[i] - top[i]));
  }
  return FrameBuffer(out_h, out_w, std::move(out));
}

LevelSize upscaled_size(int height, int width, int target_min) noexcept {
  const int min_side = std::min(height, width);
  if (min_side >= target_min) return {height, width};
  if (height <= width) {
    return {target_min, static_cast<int>(div_round_half_up(static_cast<std::int64_t>(width) * target_min, height))};
  }
  return {static_cast<int>(div_round_half_up(static_cast<std::int64_t>(height) * target_min, width)), target_min};
}

FrameBuffer upscale_if_small(const FrameBuffer& frame, int target_min) {
  const auto size = upscaled_size(frame.height(), frame.width(), target_min);
  return bilinear_resize(frame, size.height, size.width);
}

MediaClip upscale_if_small(const MediaClip& clip, int target_min) {
  const auto size = upscaled_size(clip.height(), clip.width(), target_min);
  if (size.height == clip.height() && size.width == clip.width()) return clip;
  std::vector<std::optional<FrameBuffer>> resized(clip.size());
  parallel_for(clip.size(), [&](std::size_t i) {
    // Repeated frames (cyclic selection) share storage; resample each once.
    for (std::size_t j = 0; j < i; ++j) {
      if (clip[j].shares_storage_with(clip[i])) return;
    }
    resized[i] = bilinear_resize(clip[i], size.height, size.width);
  });
  std::vector<FrameBuffer> frames;
  frames.reserve(clip.size());
  for (std::size_t i = 0; i < clip.size(); ++i) {
    if (resized[i]) {
      frames.push_back(std::move(*resized[i]));
      continue;
    }
    std::size_t j = 0;
    while (!clip[j].shares_storage_with(clip[i])) ++j;
    frames.push_back(frames[j]);
  }
  return MediaClip(std::move(frames), clip.nominal_fps());
}

PyramidLevel::PyramidLevel(int scale_id, LevelSize size, std::vector<std::optional<FrameBuffer>> frames)
    : scale_id_(scale_id), size_(size), frames_(std::move(frames)) {
  for (const auto& f : frames_) {
    if (f && (f->height() != size_.height || f->width() != size_.width)) {
      throw Error(ErrorCode::InvariantViolation, "pyramid level frame does not match level size");
    }
  }
}

const FrameBuffer& PyramidLevel::frame(std::size_t i) const {
  if (!has_frame(i)) {
    throw Error(ErrorCode::InvariantViolation,
                "frame " + std::to_string(i) + " of level " + std::to_string(scale_id_) + " was not built");
  }
  return *frames_[i];
}

Pyramid build_pyramid(const FrameBuffer& image, const SamplerConfig& config) {
  return build_pyramid(MediaClip({image}), config);
}

Pyramid build_pyramid(const MediaClip& clip, const SamplerConfig& config) {
  return build_pyramid(clip, config, FrameDemand(config.n_scales, std::vector<bool>(clip.size(), true)));
}

Pyramid build_pyramid(const MediaClip& input, const SamplerConfig& config, const FrameDemand& demand) {
  // The last level must cover out_h x out_w; for non-square outputs that can
  // need more than min(out_h, out_w) on the short side.
  int target = covering_min_side(input.height(), input.width(), config.out_height(), config.out_width());
  MediaClip clip = upscale_if_small(input, target);
  for (int need = covering_min_side(clip.height(), clip.width(), config.out_height(), config.out_width());
       need > target; need = covering_min_side(clip.height(), clip.width(), config.out_height(), config.out_width())) {
    // rounding in the upscale changed the aspect; retry from the source
    target = need;
    clip = upscale_if_small(input, target);
  }
  const auto schedule = scale_schedule(clip.height(), clip.width(), target, config.n_scales);
  if (demand.size() != schedule.size()) {
    throw Error(ErrorCode::DimMismatch, "frame demand covers " + std::to_string(demand.size()) + " levels, pyramid has " +
                                            std::to_string(schedule.size()));
  }

  struct Job {
    std::size_t level;
    std::size_t frame;
  };
  struct Alias {
    std::size_t level;
    std::size_t frame;
    std::size_t source;
  };
  std::vector<Job> jobs;
  std::vector<Alias> aliases;
  std::vector<std::vector<std::optional<FrameBuffer>>> frames(schedule.size());
  for (std::size_t level = 0; level < schedule.size(); ++level) {
    if (demand[level].size() != clip.size()) {
      throw Error(ErrorCode::DimMismatch, "frame demand for level " + std::to_string(level) + " has wrong length");
    }
    frames[level].resize(clip.size());
    for (std::size_t f = 0; f < clip.size(); ++f) {
      if (level == 0) {
        frames[0][f] = clip[f];
        continue;
      }
      if (!demand[level][f]) continue;
      // Frames repeated by cyclic selection share storage; resample once.
      std::size_t first = f;
      for (std::size_t j = 0; j < f; ++j) {
        if (demand[level][j] && clip[j].shares_storage_with(clip[f])) {
          first = j;
          break;
        }
      }
      if (first == f) {
        jobs.push_back({level, f});
      } else {
        aliases.push_back({level, f, first});
      }
    }
  }

  parallel_for(jobs.size(), [&](std::size_t j) {
    const auto [level, f] = jobs[j];
    frames[level][f] = bilinear_resize(clip[f], schedule[level].height, schedule[level].width);
  });
  for (const auto& a : aliases) frames[a.level][a.frame] = frames[a.level][a.source];

  Pyramid pyramid;
  pyramid.reserve(schedule.size());
  for (std::size_t level = 0; level < schedule.size(); ++level) {
    pyramid.emplace_back(static_cast<int>(level), schedule[level], std::move(frames[level]));
  }
  return pyramid;
}

}  // namespace sama
