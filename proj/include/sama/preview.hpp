#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "sama/frame.hpp"
#include "sama/pyramid.hpp"
#include "sama/tensor.hpp"

namespace sama {

enum class PreviewStyle { Plain, Tinted, Bordered };

std::string_view to_string(PreviewStyle style) noexcept;
std::optional<PreviewStyle> parse_preview_style(std::string_view text) noexcept;

/// Fully saturated color for `scale` among `n_scales`, hues evenly spaced
/// from red.
std::array<std::uint8_t, 3> scale_color(int scale, int n_scales) noexcept;

/// One image per tensor frame.
///   plain:    the frame as is.
///   tinted:   each pixel blended 75/25 with its scale color.
///   bordered: the frame with a 1-px outline around every cell_h x cell_w
///             cell, colored by the scale of the cell's top-left pixel.
/// Tinted and bordered need provenance (MissingProvenance otherwise).
std::vector<FrameBuffer> render_preview(const SampledTensor& tensor, PreviewStyle style, int cell_h = 32,
                                        int cell_w = 32);

struct AuditReport {
  std::size_t pixels_checked = 0;
  std::size_t mismatches = 0;
  /// Fraction of output pixels supplied by each scale.
  std::vector<double> scale_share;
  /// First mismatching pixel as (frame, y, x), when any.
  std::optional<std::array<int, 3>> first_mismatch;

  bool ok() const noexcept { return mismatches == 0; }
};

/// Re-fetches every output pixel from pyramid[scale_id].frame(src_frame) at
/// (src_y, src_x) and compares bytes. References to missing levels, frames or
/// coordinates count as mismatches. A tensor without provenance is reported
/// as all pixels mismatched.
AuditReport provenance_audit(const SampledTensor& tensor, const Pyramid& pyramid);

}  // namespace sama
