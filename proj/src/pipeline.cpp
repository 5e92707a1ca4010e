#include "sama/pipeline.hpp"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <optional>

#include "sama/clip.hpp"
#include "sama/error.hpp"
#include "sama/parallel.hpp"

namespace sama {

FrameDemand ScalePlan::demand() const {
  FrameDemand demand(n_scales, std::vector<bool>(frames, false));
  std::vector<std::vector<bool>> used(masks.size(), std::vector<bool>(n_scales, false));
  for (std::size_t m = 0; m < masks.size(); ++m) {
    for (auto s : masks[m].ids) used[m][s] = true;
  }
  for (int t = 0; t < frames; ++t) {
    for (int s = 0; s < n_scales; ++s) {
      if (used[frame_mask[t]][s]) demand[s][t] = true;
    }
  }
  return demand;
}

ScalePlan plan_scales(const SamplerConfig& config, bool video) {
  const int h = config.out_height();
  const int w = config.out_width();
  ScalePlan plan;
  plan.frames = video ? config.frames_out : 1;
  plan.n_scales = config.n_scales;
  const bool temporal = video && config.temporal_mask != TemporalMaskKind::None;
  const bool spatial = config.spatial_mask != SpatialMaskKind::None;

  if (!temporal) {
    if (!spatial) {
      plan.masks.push_back(ScaleIndexMask::uniform(h, w, config.n_scales, 0));
    } else if (config.n_scales > 2) {
      plan.masks.push_back(
          make_interlace_mask(config.n_scales, h, w, spatial_block_size(config.spatial_mask)));
    } else {
      plan.masks.push_back(
          ScaleIndexMask::from_spatial(make_spatial_mask(config.spatial_mask, h, w), 0, 1, config.n_scales));
    }
    plan.frame_mask.assign(plan.frames, 0);
    return plan;
  }

  const TemporalMask tmask = make_temporal_mask(config.temporal_mask, config.frames_out, config.n_scales);
  plan.schedule = tmask.schedule;
  const auto per_frame = tmask.per_frame();
  std::optional<SpatialMask> smask;
  if (spatial) smask = make_spatial_mask(config.spatial_mask, h, w);
  // One assignment per distinct level.
  std::vector<std::size_t> mask_of_level(config.n_scales, SIZE_MAX);
  plan.frame_mask.resize(plan.frames);
  for (int t = 0; t < plan.frames; ++t) {
    const std::uint8_t level = per_frame[t];
    if (mask_of_level[level] == SIZE_MAX) {
      mask_of_level[level] = plan.masks.size();
      if (smask) {
        const auto coarser = static_cast<std::uint8_t>(std::min<int>(level + 1, config.n_scales - 1));
        plan.masks.push_back(ScaleIndexMask::from_spatial(*smask, level, coarser, config.n_scales));
      } else {
        plan.masks.push_back(ScaleIndexMask::uniform(h, w, config.n_scales, level));
      }
    }
    plan.frame_mask[t] = mask_of_level[level];
  }
  return plan;
}

std::vector<std::vector<Offset>> pyramid_offsets(const Pyramid& pyramid, const SamplerConfig& config) {
  std::vector<std::vector<Offset>> out;
  out.reserve(pyramid.size());
  for (const auto& level : pyramid) out.push_back(level_offsets(level.size(), config, level.scale_id()));
  return out;
}

SampledTensor gather_interlaced(const Pyramid& pyramid, const std::vector<std::vector<Offset>>& offsets,
                                const ScalePlan& plan, const SamplerConfig& config) {
  const int out_h = config.out_height();
  const int out_w = config.out_width();
  const int fh = config.frag_h;
  const int fw = config.frag_w;
  if (offsets.size() != pyramid.size() || static_cast<int>(pyramid.size()) < plan.n_scales) {
    throw Error(ErrorCode::DimMismatch, "pyramid, offsets and plan disagree on level count");
  }

  SampledTensor out;
  out.height = out_h;
  out.width = out_w;
  out.frames = plan.frames;
  out.n_scales = plan.n_scales;
  out.data.resize(out.pixel_count() * 3);
  out.provenance.emplace(out.pixel_count());

  parallel_for(static_cast<std::size_t>(plan.frames), [&](std::size_t t) {
    const ScaleIndexMask& mask = plan.mask_for(static_cast<int>(t));
    for (int y = 0; y < out_h; ++y) {
      const int r = y / fh;
      const int dy = y % fh;
      const std::uint8_t* ids = mask.ids.data() + static_cast<std::size_t>(y) * out_w;
      std::uint8_t* dst = out.data.data() + out.pixel_index(static_cast<int>(t), y, 0) * 3;
      ProvenanceEntry* prov = out.provenance->data() + out.pixel_index(static_cast<int>(t), y, 0);
      int x = 0;
      while (x < out_w) {
        // Longest run inside one fragment row that reads a single level.
        const int c = x / fw;
        const int cell_end = (c + 1) * fw;
        const std::uint8_t s = ids[x];
        int run_end = x + 1;
        while (run_end < cell_end && ids[run_end] == s) ++run_end;

        const Offset o = offsets[s][static_cast<std::size_t>(r) * config.grid_cols + c];
        const int sy = o.y + dy;
        const int sx = o.x + (x - c * fw);
        const FrameBuffer& src = pyramid[s].frame(t);
        std::memcpy(dst + static_cast<std::size_t>(x) * 3, src.pixel(sy, sx),
                    static_cast<std::size_t>(run_end - x) * 3);
        for (int i = x; i < run_end; ++i) {
          prov[i] = {s, static_cast<std::uint16_t>(t), static_cast<std::uint32_t>(sy),
                     static_cast<std::uint32_t>(sx + (i - x))};
        }
        x = run_end;
      }
    }
  });
  return out;
}

void check_output_shape(const SampledTensor& tensor, const SamplerConfig& config, bool video) {
  tensor.check_consistency();
  const int frames = video ? config.frames_out : 1;
  if (tensor.height != config.out_height() || tensor.width != config.out_width() || tensor.frames != frames) {
    throw Error(ErrorCode::InvariantViolation,
                "output is " + std::to_string(tensor.height) + "x" + std::to_string(tensor.width) + "x" +
                    std::to_string(tensor.frames) + ", config promises " + std::to_string(config.out_height()) + "x" +
                    std::to_string(config.out_width()) + "x" + std::to_string(frames));
  }
  if (!tensor.provenance) throw Error(ErrorCode::InvariantViolation, "sampler output lacks provenance");
}

SampleResult sample_image(const FrameBuffer& image, const SamplerConfig& config) {
  SampleResult result;
  result.warnings = validate(config, false).warnings;
  const ScalePlan plan = plan_scales(config, false);
  result.pyramid = build_pyramid(image, config);
  const auto offsets = pyramid_offsets(result.pyramid, config);
  result.tensor = gather_interlaced(result.pyramid, offsets, plan, config);
  result.tensor.kind = MediaKind::Image;
  result.tensor.spatial_mask = config.spatial_mask;
  result.tensor.temporal_mask = TemporalMaskKind::None;
  result.tensor.seed = config.seed;
  check_output_shape(result.tensor, config, false);
  return result;
}

SampleResult sample_video(const MediaClip& clip, const SamplerConfig& config) {
  SampleResult result;
  result.warnings = validate(config, true).warnings;
  const ScalePlan plan = plan_scales(config, true);
  const MediaClip selected = select_frames(clip, config.frames_out, config.offset_policy, config.seed);
  result.pyramid = build_pyramid(selected, config, plan.demand());
  const auto offsets = pyramid_offsets(result.pyramid, config);
  result.tensor = gather_interlaced(result.pyramid, offsets, plan, config);
  result.tensor.kind = MediaKind::Video;
  result.tensor.spatial_mask = config.spatial_mask;
  result.tensor.temporal_mask = config.temporal_mask;
  result.tensor.seed = config.seed;
  result.tensor.schedule = plan.schedule;
  check_output_shape(result.tensor, config, true);
  return result;
}

}  // namespace sama
