#include "sama/masks.hpp"

#include <algorithm>
#include <string>

#include "sama/error.hpp"

namespace sama {

namespace {

std::string dims(int h, int w) { return std::to_string(h) + "x" + std::to_string(w); }

void check_same_geometry(const FragmentMosaic& a, const FragmentMosaic& b) {
  if (a.height() != b.height() || a.width() != b.width() || a.frag_h() != b.frag_h() || a.frag_w() != b.frag_w()) {
    throw Error(ErrorCode::DimMismatch, "mosaics " + dims(a.height(), a.width()) + " and " +
                                            dims(b.height(), b.width()) + " differ in geometry");
  }
}

// Gathers output frame t pixel by pixel from the mosaic chosen by `pick`.
template <typename Pick>
void gather_frame(std::span<const FragmentMosaic* const> sources, int t, std::size_t src_frame, Pick&& pick,
                  SampledTensor& out) {
  const int h = out.height;
  const int w = out.width;
  std::uint8_t* dst = out.data.data() + out.pixel_index(t, 0, 0) * 3;
  ProvenanceEntry* prov = out.provenance->data() + out.pixel_index(t, 0, 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::uint8_t s = pick(y, x);
      const FragmentMosaic& m = *sources[s];
      const std::uint8_t* px = m.frame(src_frame).pixel(y, x);
      dst[0] = px[0];
      dst[1] = px[1];
      dst[2] = px[2];
      dst += 3;
      const Offset at = m.source_of(y, x);
      *prov++ = {static_cast<std::uint8_t>(m.scale_id()), static_cast<std::uint16_t>(src_frame),
                 static_cast<std::uint32_t>(at.y), static_cast<std::uint32_t>(at.x)};
    }
  }
}

SampledTensor empty_tensor(int h, int w, int frames, int n_scales) {
  SampledTensor t;
  t.kind = frames > 1 ? MediaKind::Video : MediaKind::Image;
  t.height = h;
  t.width = w;
  t.frames = frames;
  t.n_scales = n_scales;
  t.data.resize(t.pixel_count() * 3);
  t.provenance.emplace(t.pixel_count());
  return t;
}

}  // namespace

int spatial_block_size(SpatialMaskKind kind) noexcept {
  switch (kind) {
    case SpatialMaskKind::Window: return 32;
    case SpatialMaskKind::Patch: return 4;
    case SpatialMaskKind::None: return 0;
  }
  return 0;
}

std::size_t SpatialMask::count_ones() const noexcept {
  return static_cast<std::size_t>(std::count(bitmap.begin(), bitmap.end(), std::uint8_t{1}));
}

SpatialMask SpatialMask::uniform(int height, int width, std::uint8_t value) {
  SpatialMask m;
  m.kind = SpatialMaskKind::None;
  m.block = 1;
  m.height = height;
  m.width = width;
  m.bitmap.assign(static_cast<std::size_t>(height) * width, value);
  return m;
}

SpatialMask make_spatial_mask(SpatialMaskKind kind, int out_h, int out_w) {
  const int block = spatial_block_size(kind);
  if (block == 0) throw Error(ErrorCode::BadArity, "spatial mask kind 'none' has no pattern");
  if (out_h < 1 || out_w < 1 || out_h % block != 0 || out_w % block != 0) {
    throw Error(ErrorCode::IndivisibleDims, dims(out_h, out_w) + " is not a multiple of the " + std::to_string(block) +
                                                "-pixel " + std::string(to_string(kind)) + " block");
  }
  SpatialMask m;
  m.kind = kind;
  m.block = block;
  m.height = out_h;
  m.width = out_w;
  m.bitmap.resize(static_cast<std::size_t>(out_h) * out_w);
  for (int y = 0; y < out_h; ++y) {
    for (int x = 0; x < out_w; ++x) {
      m.bitmap[static_cast<std::size_t>(y) * out_w + x] = ((y / block + x / block) % 2 == 0) ? 1 : 0;
    }
  }
  return m;
}

std::vector<std::uint8_t> ScaleIndexMask::indicator(int scale) const {
  std::vector<std::uint8_t> out(ids.size());
  std::transform(ids.begin(), ids.end(), out.begin(), [scale](std::uint8_t s) { return s == scale ? 1 : 0; });
  return out;
}

std::vector<std::size_t> ScaleIndexMask::counts() const {
  std::vector<std::size_t> out(n_scales, 0);
  for (auto s : ids) ++out[s];
  return out;
}

ScaleIndexMask ScaleIndexMask::uniform(int height, int width, int n_scales, std::uint8_t scale) {
  return {height, width, n_scales, std::vector<std::uint8_t>(static_cast<std::size_t>(height) * width, scale)};
}

ScaleIndexMask ScaleIndexMask::from_spatial(const SpatialMask& mask, std::uint8_t raw_scale, std::uint8_t coarse_scale,
                                            int n_scales) {
  ScaleIndexMask out{mask.height, mask.width, n_scales, std::vector<std::uint8_t>(mask.bitmap.size())};
  std::transform(mask.bitmap.begin(), mask.bitmap.end(), out.ids.begin(),
                 [&](std::uint8_t bit) { return bit ? raw_scale : coarse_scale; });
  return out;
}

ScaleIndexMask make_interlace_mask(int n_scales, int out_h, int out_w, int block) {
  if (n_scales != 3 && n_scales != 4) {
    throw Error(ErrorCode::BadArity, "interlace masks take 3 or 4 scales, got " + std::to_string(n_scales));
  }
  if (block < 1 || out_h < 1 || out_w < 1 || out_h % block != 0 || out_w % block != 0) {
    throw Error(ErrorCode::IndivisibleDims,
                dims(out_h, out_w) + " is not a multiple of the " + std::to_string(block) + "-pixel block");
  }
  static constexpr std::uint8_t kRggb4[2][2] = {{0, 1}, {2, 3}};
  static constexpr std::uint8_t kRggb3[2][2] = {{0, 1}, {1, 2}};
  const auto& pattern = n_scales == 4 ? kRggb4 : kRggb3;
  ScaleIndexMask m{out_h, out_w, n_scales, std::vector<std::uint8_t>(static_cast<std::size_t>(out_h) * out_w)};
  for (int y = 0; y < out_h; ++y) {
    for (int x = 0; x < out_w; ++x) {
      m.ids[static_cast<std::size_t>(y) * out_w + x] = pattern[(y / block) % 2][(x / block) % 2];
    }
  }
  return m;
}

std::vector<std::uint8_t> TemporalMask::per_frame() const {
  std::vector<std::uint8_t> out;
  out.reserve(schedule.size() * 2);
  for (auto s : schedule) {
    out.push_back(s);
    out.push_back(s);
  }
  return out;
}

TemporalMask make_temporal_mask(TemporalMaskKind kind, int frames, int n_levels) {
  if (frames < 2 || frames % 2 != 0) {
    throw Error(ErrorCode::BadArity, "temporal masks need an even frame count, got " + std::to_string(frames));
  }
  if (n_levels < 1 || n_levels > 255) throw Error(ErrorCode::BadArity, "level count out of range");
  const int pairs = frames / 2;
  const int need = required_scales(kind, frames);
  auto bad_arity = [&](const std::string& why) {
    return Error(ErrorCode::BadArity, std::string(to_string(kind)) + " mask for " + std::to_string(frames) +
                                          " frames " + why + ", got " + std::to_string(n_levels) + " levels");
  };
  TemporalMask m;
  m.kind = kind;
  m.n_levels = n_levels;
  m.schedule.resize(pairs);
  switch (kind) {
    case TemporalMaskKind::None:
      throw Error(ErrorCode::BadArity, "temporal mask kind 'none' has no schedule");
    case TemporalMaskKind::Progressive:
      if (n_levels != need) throw bad_arity("needs T/2 = " + std::to_string(need) + " levels");
      for (int k = 0; k < pairs; ++k) m.schedule[k] = static_cast<std::uint8_t>(k);
      break;
    case TemporalMaskKind::Choppy:
      if (n_levels != need) throw bad_arity("needs exactly the finest and coarsest levels");
      for (int k = 0; k < pairs; ++k) m.schedule[k] = static_cast<std::uint8_t>(k % 2);
      break;
    case TemporalMaskKind::Mixed:
      if (frames % 4 != 0 || n_levels != need) throw bad_arity("needs T divisible by 4 and T/4 levels");
      for (int k = 0; k < pairs; ++k) m.schedule[k] = static_cast<std::uint8_t>(k % need);
      break;
  }
  return m;
}

SampledTensor compose_indexed(std::span<const FragmentMosaic> by_scale, const ScaleIndexMask& mask) {
  if (by_scale.empty()) throw Error(ErrorCode::BadArity, "no mosaics to compose");
  std::vector<const FragmentMosaic*> sources;
  int max_scale = 0;
  for (const auto& m : by_scale) {
    check_same_geometry(by_scale.front(), m);
    if (m.frame_count() != by_scale.front().frame_count()) {
      throw Error(ErrorCode::DimMismatch, "mosaics disagree on frame count");
    }
    sources.push_back(&m);
    max_scale = std::max(max_scale, m.scale_id());
  }
  const auto& first = by_scale.front();
  if (mask.height != first.height() || mask.width != first.width()) {
    throw Error(ErrorCode::DimMismatch, "mask " + dims(mask.height, mask.width) + " vs mosaic " +
                                            dims(first.height(), first.width()));
  }
  for (auto s : mask.ids) {
    if (s >= sources.size()) throw Error(ErrorCode::BadArity, "mask selects scale " + std::to_string(s) + " of " +
                                                                  std::to_string(sources.size()));
  }
  const int frames = static_cast<int>(first.frame_count());
  SampledTensor out = empty_tensor(first.height(), first.width(), frames, std::max(max_scale + 1, mask.n_scales));
  for (int t = 0; t < frames; ++t) {
    gather_frame(sources, t, static_cast<std::size_t>(t), [&](int y, int x) { return mask.at(y, x); }, out);
  }
  return out;
}

SampledTensor compose_spatial(const FragmentMosaic& m0, const FragmentMosaic& m1, const SpatialMask& mask) {
  check_same_geometry(m0, m1);
  if (mask.height != m0.height() || mask.width != m0.width()) {
    throw Error(ErrorCode::DimMismatch, "mask " + dims(mask.height, mask.width) + " vs mosaic " +
                                            dims(m0.height(), m0.width()));
  }
  if (m0.frame_count() != m1.frame_count()) throw Error(ErrorCode::DimMismatch, "mosaics disagree on frame count");
  const FragmentMosaic* sources[2] = {&m1, &m0};  // indexed by mask bit
  const int frames = static_cast<int>(m0.frame_count());
  SampledTensor out = empty_tensor(m0.height(), m0.width(), frames, std::max(m0.scale_id(), m1.scale_id()) + 1);
  out.spatial_mask = mask.kind;
  for (int t = 0; t < frames; ++t) {
    gather_frame(sources, t, static_cast<std::size_t>(t), [&](int y, int x) { return mask.at(y, x); }, out);
  }
  return out;
}

SampledTensor compose_temporal(std::span<const FragmentMosaic> by_level, const TemporalMask& mask) {
  if (static_cast<int>(by_level.size()) < mask.n_levels) {
    throw Error(ErrorCode::BadArity, "schedule needs " + std::to_string(mask.n_levels) + " levels, got " +
                                         std::to_string(by_level.size()));
  }
  const int frames = mask.frames();
  std::vector<const FragmentMosaic*> sources;
  for (std::size_t i = 0; i < by_level.size(); ++i) {
    const auto& m = by_level[i];
    check_same_geometry(by_level.front(), m);
    if (m.scale_id() != static_cast<int>(i)) throw Error(ErrorCode::BadArity, "mosaics must be ordered by level");
    sources.push_back(&m);
  }
  for (auto s : mask.schedule) {
    if (s >= by_level.size()) throw Error(ErrorCode::BadArity, "schedule references missing level");
    if (static_cast<int>(by_level[s].frame_count()) < frames) {
      throw Error(ErrorCode::DimMismatch, "level " + std::to_string(s) + " mosaic has " +
                                              std::to_string(by_level[s].frame_count()) + " frames, need " +
                                              std::to_string(frames));
    }
  }
  const auto& first = by_level.front();
  SampledTensor out = empty_tensor(first.height(), first.width(), frames, mask.n_levels);
  out.kind = MediaKind::Video;
  out.temporal_mask = mask.kind;
  out.schedule = mask.schedule;
  for (int t = 0; t < frames; ++t) {
    const std::uint8_t level = mask.schedule[t / 2];
    gather_frame(sources, t, static_cast<std::size_t>(t), [level](int, int) { return level; }, out);
  }
  return out;
}

}  // namespace sama
