#include "sama/config.hpp"

#include <algorithm>

#include "sama/error.hpp"
#include "sama/masks.hpp"

namespace sama {

std::string_view to_string(SpatialMaskKind kind) noexcept {
  switch (kind) {
    case SpatialMaskKind::None: return "none";
    case SpatialMaskKind::Window: return "window";
    case SpatialMaskKind::Patch: return "patch";
  }
  return "?";
}

std::string_view to_string(TemporalMaskKind kind) noexcept {
  switch (kind) {
    case TemporalMaskKind::None: return "none";
    case TemporalMaskKind::Progressive: return "progressive";
    case TemporalMaskKind::Choppy: return "choppy";
    case TemporalMaskKind::Mixed: return "mixed";
  }
  return "?";
}

std::string_view to_string(OffsetPolicy policy) noexcept {
  return policy == OffsetPolicy::Random ? "random" : "center";
}

std::optional<SpatialMaskKind> parse_spatial_mask(std::string_view text) noexcept {
  if (text == "none") return SpatialMaskKind::None;
  if (text == "window") return SpatialMaskKind::Window;
  if (text == "patch") return SpatialMaskKind::Patch;
  return std::nullopt;
}

std::optional<TemporalMaskKind> parse_temporal_mask(std::string_view text) noexcept {
  if (text == "none") return TemporalMaskKind::None;
  if (text == "progressive") return TemporalMaskKind::Progressive;
  if (text == "choppy") return TemporalMaskKind::Choppy;
  if (text == "mixed") return TemporalMaskKind::Mixed;
  return std::nullopt;
}

std::optional<OffsetPolicy> parse_offset_policy(std::string_view text) noexcept {
  if (text == "random") return OffsetPolicy::Random;
  if (text == "center") return OffsetPolicy::Center;
  return std::nullopt;
}

int SamplerConfig::target_min_side() const noexcept { return std::min(out_height(), out_width()); }

SamplerConfig SamplerConfig::image_defaults() {
  SamplerConfig c;
  c.grid_rows = c.grid_cols = 8;
  c.frag_h = c.frag_w = 32;
  c.frames_out = 1;
  c.n_scales = 2;
  c.spatial_mask = SpatialMaskKind::Window;
  c.temporal_mask = TemporalMaskKind::None;
  return c;
}

SamplerConfig SamplerConfig::video_defaults() {
  SamplerConfig c;
  c.grid_rows = c.grid_cols = 7;
  c.frag_h = c.frag_w = 32;
  c.frames_out = 32;
  c.n_scales = 16;
  c.spatial_mask = SpatialMaskKind::None;
  c.temporal_mask = TemporalMaskKind::Progressive;
  return c;
}

int required_scales(TemporalMaskKind kind, int frames_out) noexcept {
  switch (kind) {
    case TemporalMaskKind::None: return 1;
    case TemporalMaskKind::Progressive: return frames_out / 2;
    case TemporalMaskKind::Choppy: return 2;
    case TemporalMaskKind::Mixed: return frames_out / 4;
  }
  return 1;
}

namespace {

[[noreturn]] void reject(const std::string& why) { throw Error(ErrorCode::InvalidConfig, why); }

}  // namespace

ConfigReport validate(const SamplerConfig& c, bool video) {
  ConfigReport report;
  if (c.grid_rows < 1 || c.grid_cols < 1) reject("grid must be at least 1x1");
  if (c.frag_h < 1 || c.frag_w < 1) reject("fragment must be at least 1x1");
  if (c.n_scales < 1 || c.n_scales > 255) reject("n_scales must be in [1, 255]");
  if (c.frames_out < 1) reject("frames_out must be >= 1");

  const bool spatial = c.spatial_mask != SpatialMaskKind::None;
  const bool temporal = video && c.temporal_mask != TemporalMaskKind::None;

  if (!video && c.temporal_mask != TemporalMaskKind::None) reject("temporal masks apply to video only");

  if (temporal) {
    if (c.frames_out % 2 != 0) reject("frames_out must be even under a temporal mask (two frames per scale block)");
    if (c.temporal_mask == TemporalMaskKind::Mixed && c.frames_out % 4 != 0)
      reject("mixed temporal mask needs frames_out divisible by 4");
    const int need = required_scales(c.temporal_mask, c.frames_out);
    if (c.n_scales != need) {
      reject(std::string(to_string(c.temporal_mask)) + " mask with " + std::to_string(c.frames_out) +
             " frames needs n_scales == " + std::to_string(need) + ", got " + std::to_string(c.n_scales));
    }
  }

  if (spatial) {
    if (!temporal && (c.n_scales < 2 || c.n_scales > 4))
      reject("spatial masks interlace 2 scales (checkerboard) or 3-4 scales (Bayer tiling), got " +
             std::to_string(c.n_scales));
    const int block = spatial_block_size(c.spatial_mask);
    if (c.out_height() % block != 0 || c.out_width() % block != 0) {
      reject("output " + std::to_string(c.out_height()) + "x" + std::to_string(c.out_width()) +
             " is not divisible by the " + std::to_string(block) + "-pixel mask block");
    }
  }

  if (spatial && temporal) {
    report.warnings.emplace_back("combined spatial and temporal masking is experimental");
  }
  if (!spatial && !temporal && c.n_scales > 1) {
    reject("n_scales > 1 needs a spatial or temporal mask to interlace the scales");
  }
  return report;
}

}  // namespace sama
