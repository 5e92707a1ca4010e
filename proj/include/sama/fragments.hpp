#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sama/config.hpp"
#include "sama/frame.hpp"
#include "sama/pyramid.hpp"

namespace sama {

/// One rectangle of the G_h x G_w partition of a frame.
struct GridCell {
  int row = 0;
  int col = 0;
  int y0 = 0;
  int x0 = 0;
  int h = 0;
  int w = 0;
};

/// Top-left corner of a fragment in level coordinates.
struct Offset {
  int y = 0;
  int x = 0;
  friend bool operator==(const Offset&, const Offset&) = default;
};

/// Balanced floor partition: cell (r, c) spans rows [floor(r*H/G_h), floor((r+1)*H/G_h))
/// and likewise for columns. Cells are returned row-major. Throws GridTooFine
/// when the level has fewer rows or columns than the grid.
std::vector<GridCell> grid_partition(int level_h, int level_w, int grid_rows, int grid_cols);

/// One fragment origin per cell.
///
/// Center picks floor((h - f_h) / 2), floor((w - f_w) / 2) inside the cell.
/// Random draws each axis uniformly over the valid top-lefts from the
/// counter-based generator addressed by (seed, scale_id, row, col), so draws
/// do not depend on evaluation order. With `aligned` the scale id is left out
/// of the address and every level uses the same cell-relative position.
///
/// Throws CellSmallerThanFragment if any cell cannot hold a fragment.
std::vector<Offset> choose_offsets(std::span<const GridCell> cells, int frag_h, int frag_w, OffsetPolicy policy,
                                   std::uint64_t seed, int scale_id, bool aligned = false);

/// Offsets for a whole level of the given size under `config`.
std::vector<Offset> level_offsets(LevelSize size, const SamplerConfig& config, int scale_id);

/// Fixed-size mosaic of raw-resolution patches, one per grid cell, for every
/// frame of one pyramid level.
class FragmentMosaic {
 public:
  FragmentMosaic(int scale_id, int grid_rows, int grid_cols, int frag_h, int frag_w, std::vector<Offset> offsets,
                 std::vector<FrameBuffer> frames);

  int scale_id() const noexcept { return scale_id_; }
  int grid_rows() const noexcept { return grid_rows_; }
  int grid_cols() const noexcept { return grid_cols_; }
  int frag_h() const noexcept { return frag_h_; }
  int frag_w() const noexcept { return frag_w_; }
  int height() const noexcept { return grid_rows_ * frag_h_; }
  int width() const noexcept { return grid_cols_ * frag_w_; }
  std::size_t frame_count() const noexcept { return frames_.size(); }
  const FrameBuffer& frame(std::size_t i) const noexcept { return frames_[i]; }
  const std::vector<Offset>& offsets() const noexcept { return offsets_; }

  /// Level coordinates of mosaic pixel (y, x).
  Offset source_of(int y, int x) const noexcept {
    const auto& o = offsets_[static_cast<std::size_t>(y / frag_h_) * grid_cols_ + x / frag_w_];
    return {o.y + y % frag_h_, o.x + x % frag_w_};
  }

 private:
  int scale_id_;
  int grid_rows_;
  int grid_cols_;
  int frag_h_;
  int frag_w_;
  std::vector<Offset> offsets_;
  std::vector<FrameBuffer> frames_;
};

/// Copies the f_h x f_w window at each cell's offset into the mosaic. Every
/// frame of the level uses the same offsets. All level frames must be built.
FragmentMosaic sample_fragments(const PyramidLevel& level, const SamplerConfig& config);

}  // namespace sama
