#include "sama/fragments.hpp"

#include <cstring>
#include <string>

#include "sama/error.hpp"
#include "sama/parallel.hpp"
#include "sama/random.hpp"

namespace sama {

namespace {

constexpr std::uint32_t kAlignedScaleKey = 0xFFFFFFFFu;

std::string dims(int h, int w) { return std::to_string(h) + "x" + std::to_string(w); }

}  // namespace

std::vector<GridCell> grid_partition(int level_h, int level_w, int grid_rows, int grid_cols) {
  if (grid_rows < 1 || grid_cols < 1) throw Error(ErrorCode::InvalidConfig, "grid must be at least 1x1");
  if (level_h < grid_rows || level_w < grid_cols) {
    throw Error(ErrorCode::GridTooFine, "cannot split " + dims(level_h, level_w) + " into a " +
                                            dims(grid_rows, grid_cols) + " grid");
  }
  std::vector<GridCell> cells;
  cells.reserve(static_cast<std::size_t>(grid_rows) * grid_cols);
  for (int r = 0; r < grid_rows; ++r) {
    const int y0 = static_cast<int>(static_cast<std::int64_t>(r) * level_h / grid_rows);
    const int y1 = static_cast<int>(static_cast<std::int64_t>(r + 1) * level_h / grid_rows);
    for (int c = 0; c < grid_cols; ++c) {
      const int x0 = static_cast<int>(static_cast<std::int64_t>(c) * level_w / grid_cols);
      const int x1 = static_cast<int>(static_cast<std::int64_t>(c + 1) * level_w / grid_cols);
      cells.push_back({r, c, y0, x0, y1 - y0, x1 - x0});
    }
  }
  return cells;
}

std::vector<Offset> choose_offsets(std::span<const GridCell> cells, int frag_h, int frag_w, OffsetPolicy policy,
                                   std::uint64_t seed, int scale_id, bool aligned) {
  std::vector<Offset> offsets;
  offsets.reserve(cells.size());
  const std::uint32_t scale_key = aligned ? kAlignedScaleKey : static_cast<std::uint32_t>(scale_id);
  for (const auto& cell : cells) {
    if (cell.h < frag_h || cell.w < frag_w) {
      throw Error(ErrorCode::CellSmallerThanFragment, "cell (" + std::to_string(cell.row) + "," +
                                                          std::to_string(cell.col) + ") is " +
                                                          dims(cell.h, cell.w) + ", fragment is " +
                                                          dims(frag_h, frag_w));
    }
    const int span_y = cell.h - frag_h;
    const int span_x = cell.w - frag_w;
    if (policy == OffsetPolicy::Center) {
      offsets.push_back({cell.y0 + span_y / 2, cell.x0 + span_x / 2});
      continue;
    }
    const auto row = static_cast<std::uint32_t>(cell.row);
    const auto col = static_cast<std::uint32_t>(cell.col) << 1;
    const auto by = random_bits(seed, RandomStream::FragmentOffset, scale_key, row, col);
    const auto bx = random_bits(seed, RandomStream::FragmentOffset, scale_key, row, col | 1u);
    offsets.push_back({cell.y0 + static_cast<int>(bounded(by, static_cast<std::uint64_t>(span_y) + 1)),
                       cell.x0 + static_cast<int>(bounded(bx, static_cast<std::uint64_t>(span_x) + 1))});
  }
  return offsets;
}

std::vector<Offset> level_offsets(LevelSize size, const SamplerConfig& config, int scale_id) {
  const auto cells = grid_partition(size.height, size.width, config.grid_rows, config.grid_cols);
  return choose_offsets(cells, config.frag_h, config.frag_w, config.offset_policy, config.seed, scale_id,
                        config.aligned_offsets);
}

FragmentMosaic::FragmentMosaic(int scale_id, int grid_rows, int grid_cols, int frag_h, int frag_w,
                               std::vector<Offset> offsets, std::vector<FrameBuffer> frames)
    : scale_id_(scale_id),
      grid_rows_(grid_rows),
      grid_cols_(grid_cols),
      frag_h_(frag_h),
      frag_w_(frag_w),
      offsets_(std::move(offsets)),
      frames_(std::move(frames)) {
  if (offsets_.size() != static_cast<std::size_t>(grid_rows) * grid_cols) {
    throw Error(ErrorCode::InvariantViolation, "mosaic needs one offset per grid cell");
  }
  for (const auto& f : frames_) {
    if (f.height() != height() || f.width() != width()) {
      throw Error(ErrorCode::InvariantViolation, "mosaic frame is " + dims(f.height(), f.width()) + ", expected " +
                                                     dims(height(), width()));
    }
  }
}

FragmentMosaic sample_fragments(const PyramidLevel& level, const SamplerConfig& config) {
  auto offsets = level_offsets(level.size(), config, level.scale_id());
  const int out_h = config.out_height();
  const int out_w = config.out_width();
  const std::size_t row_bytes = static_cast<std::size_t>(config.frag_w) * 3;

  std::vector<std::optional<FrameBuffer>> gathered(level.frame_count());
  parallel_for(level.frame_count(), [&](std::size_t f) {
    const FrameBuffer& src = level.frame(f);
    std::vector<std::uint8_t> px(static_cast<std::size_t>(out_h) * out_w * 3);
    for (int r = 0; r < config.grid_rows; ++r) {
      for (int c = 0; c < config.grid_cols; ++c) {
        const Offset o = offsets[static_cast<std::size_t>(r) * config.grid_cols + c];
        for (int dy = 0; dy < config.frag_h; ++dy) {
          const int y = r * config.frag_h + dy;
          std::uint8_t* dst = px.data() + (static_cast<std::size_t>(y) * out_w + c * config.frag_w) * 3;
          std::memcpy(dst, src.pixel(o.y + dy, o.x), row_bytes);
        }
      }
    }
    gathered[f] = FrameBuffer(out_h, out_w, std::move(px));
  });

  std::vector<FrameBuffer> frames;
  frames.reserve(gathered.size());
  for (auto& g : gathered) frames.push_back(std::move(*g));
  return FragmentMosaic(level.scale_id(), config.grid_rows, config.grid_cols, config.frag_h, config.frag_w,
                        std::move(offsets), std::move(frames));
}

}  // namespace sama
