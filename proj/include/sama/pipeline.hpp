#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sama/config.hpp"
#include "sama/fragments.hpp"
#include "sama/frame.hpp"
#include "sama/masks.hpp"
#include "sama/pyramid.hpp"
#include "sama/tensor.hpp"

namespace sama {

/// Which pyramid level supplies every output pixel of every output frame.
struct ScalePlan {
  int frames = 1;
  int n_scales = 1;
  /// Distinct per-frame assignments; frame_mask[t] indexes into it.
  std::vector<ScaleIndexMask> masks;
  std::vector<std::size_t> frame_mask;
  /// Scale id per frame pair when a temporal mask is active.
  std::vector<std::uint8_t> schedule;

  const ScaleIndexMask& mask_for(int t) const { return masks[frame_mask[t]]; }
  /// demand[level][frame]: true where any output pixel reads that frame.
  FrameDemand demand() const;
};

/// Scale assignment for a validated config. Images (video == false) use a
/// single frame. Spatial masks map raw tiles to the frame pair's scheduled
/// level and coarse tiles to the next coarser level when both masks are on.
ScalePlan plan_scales(const SamplerConfig& config, bool video);

/// Fragment offsets for every pyramid level, indexed by scale id.
std::vector<std::vector<Offset>> pyramid_offsets(const Pyramid& pyramid, const SamplerConfig& config);

/// Fused fragment gather and mask composition: every output pixel is copied
/// once from the level the plan selects, so the cost matches single-scale
/// fragment sampling. Fills data and provenance; metadata is left to callers.
SampledTensor gather_interlaced(const Pyramid& pyramid, const std::vector<std::vector<Offset>>& offsets,
                                const ScalePlan& plan, const SamplerConfig& config);

struct SampleResult {
  SampledTensor tensor;
  Pyramid pyramid;
  std::vector<std::string> warnings;
};

/// Scaling, fragment sampling and masking for one image.
SampleResult sample_image(const FrameBuffer& image, const SamplerConfig& config);

/// Frame selection to config.frames_out, then scaling, fragment sampling and
/// masking. Only the pyramid frames the plan reads are resampled.
SampleResult sample_video(const MediaClip& clip, const SamplerConfig& config);

/// Throws InvariantViolation unless the tensor has the output size the
/// config promises and provenance covering every pixel.
void check_output_shape(const SampledTensor& tensor, const SamplerConfig& config, bool video);

}  // namespace sama
