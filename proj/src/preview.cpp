#include "sama/preview.hpp"

#include <algorithm>
#include <cmath>

#include "sama/error.hpp"

namespace sama {

std::string_view to_string(PreviewStyle style) noexcept {
  switch (style) {
    case PreviewStyle::Plain: return "plain";
    case PreviewStyle::Tinted: return "tinted";
    case PreviewStyle::Bordered: return "bordered";
  }
  return "?";
}

std::optional<PreviewStyle> parse_preview_style(std::string_view text) noexcept {
  if (text == "plain") return PreviewStyle::Plain;
  if (text == "tinted") return PreviewStyle::Tinted;
  if (text == "bordered") return PreviewStyle::Bordered;
  return std::nullopt;
}

std::array<std::uint8_t, 3> scale_color(int scale, int n_scales) noexcept {
  const double hue = 6.0 * scale / std::max(n_scales, 1);  // sextant units
  const int sector = static_cast<int>(std::floor(hue)) % 6;
  const double f = hue - std::floor(hue);
  const auto up = static_cast<std::uint8_t>(std::lround(255.0 * f));
  const auto down = static_cast<std::uint8_t>(255 - up);
  switch (sector) {
    case 0: return {255, up, 0};
    case 1: return {down, 255, 0};
    case 2: return {0, 255, up};
    case 3: return {0, down, 255};
    case 4: return {up, 0, 255};
    default: return {255, 0, down};
  }
}

std::vector<FrameBuffer> render_preview(const SampledTensor& t, PreviewStyle style, int cell_h, int cell_w) {
  if (style != PreviewStyle::Plain && !t.provenance) {
    throw Error(ErrorCode::MissingProvenance, std::string(to_string(style)) + " preview needs provenance");
  }
  if (cell_h < 1 || cell_w < 1) throw Error(ErrorCode::InvalidConfig, "preview cell size must be positive");
  std::vector<FrameBuffer> out;
  out.reserve(t.frames);
  const std::size_t frame_px = static_cast<std::size_t>(t.height) * t.width;
  for (int f = 0; f < t.frames; ++f) {
    const std::size_t base = frame_px * f;
    std::vector<std::uint8_t> px(t.data.begin() + static_cast<std::ptrdiff_t>(base * 3),
                                 t.data.begin() + static_cast<std::ptrdiff_t>((base + frame_px) * 3));
    if (style == PreviewStyle::Tinted) {
      for (std::size_t i = 0; i < frame_px; ++i) {
        const auto color = scale_color((*t.provenance)[base + i].scale_id, t.n_scales);
        for (int c = 0; c < 3; ++c) {
          px[i * 3 + c] = static_cast<std::uint8_t>((3 * px[i * 3 + c] + color[c] + 2) / 4);
        }
      }
    } else if (style == PreviewStyle::Bordered) {
      for (int y = 0; y < t.height; ++y) {
        for (int x = 0; x < t.width; ++x) {
          const bool edge = y % cell_h == 0 || y % cell_h == cell_h - 1 || y == t.height - 1 || x % cell_w == 0 ||
                            x % cell_w == cell_w - 1 || x == t.width - 1;
          if (!edge) continue;
          const int cy = (y / cell_h) * cell_h;
          const int cx = (x / cell_w) * cell_w;
          const auto scale = (*t.provenance)[base + static_cast<std::size_t>(cy) * t.width + cx].scale_id;
          const auto color = scale_color(scale, t.n_scales);
          std::copy(color.begin(), color.end(), px.begin() + (static_cast<std::ptrdiff_t>(y) * t.width + x) * 3);
        }
      }
    }
    out.emplace_back(t.height, t.width, std::move(px));
  }
  return out;
}

AuditReport provenance_audit(const SampledTensor& t, const Pyramid& pyramid) {
  AuditReport report;
  report.pixels_checked = t.pixel_count();
  report.scale_share.assign(std::max<std::size_t>(pyramid.size(), static_cast<std::size_t>(t.n_scales)), 0.0);
  if (!t.provenance || t.provenance->size() != t.pixel_count()) {
    report.mismatches = report.pixels_checked;
    return report;
  }
  std::vector<std::size_t> counts(report.scale_share.size(), 0);
  for (int f = 0; f < t.frames; ++f) {
    for (int y = 0; y < t.height; ++y) {
      for (int x = 0; x < t.width; ++x) {
        const std::size_t i = t.pixel_index(f, y, x);
        const auto& p = (*t.provenance)[i];
        if (p.scale_id < counts.size()) ++counts[p.scale_id];
        bool match = false;
        if (p.scale_id < pyramid.size()) {
          const auto& level = pyramid[p.scale_id];
          if (level.has_frame(p.src_frame) && p.src_y < static_cast<std::uint32_t>(level.height()) &&
              p.src_x < static_cast<std::uint32_t>(level.width())) {
            const std::uint8_t* src = level.frame(p.src_frame).pixel(static_cast<int>(p.src_y), static_cast<int>(p.src_x));
            match = std::equal(src, src + 3, t.data.begin() + static_cast<std::ptrdiff_t>(i * 3));
          }
        }
        if (!match) {
          if (report.mismatches == 0) report.first_mismatch = std::array<int, 3>{f, y, x};
          ++report.mismatches;
        }
      }
    }
  }
  for (std::size_t s = 0; s < counts.size(); ++s) {
    report.scale_share[s] = static_cast<double>(counts[s]) / static_cast<double>(report.pixels_checked);
  }
  return report;
}

}  // namespace sama
