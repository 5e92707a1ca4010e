#include <doctest.h>

#include <algorithm>

#include "sama/error.hpp"
#include "sama/fragments.hpp"
#include "sama/random.hpp"
#include "support/oracles.hpp"

using namespace sama;

namespace {

SamplerConfig grid_config(int rows, int cols, OffsetPolicy policy, std::uint64_t seed = 0) {
  SamplerConfig c = SamplerConfig::video_defaults();
  c.grid_rows = rows;
  c.grid_cols = cols;
  c.offset_policy = policy;
  c.seed = seed;
  return c;
}

PyramidLevel single_level(FrameBuffer f, int scale_id = 0) {
  const LevelSize size{f.height(), f.width()};
  return PyramidLevel(scale_id, size, {std::optional<FrameBuffer>(std::move(f))});
}

// Pearson chi-square statistic against a uniform histogram.
double chi_square(const std::vector<int>& counts) {
  double total = 0;
  for (int c : counts) total += c;
  const double expected = total / counts.size();
  double x2 = 0;
  for (int c : counts) x2 += (c - expected) * (c - expected) / expected;
  return x2;
}

}  // namespace

TEST_SUITE("fragments") {
  TEST_CASE("224 / 7 partitions into 32-pixel cells") {
    const auto cells = grid_partition(224, 224, 7, 7);
    REQUIRE(cells.size() == 49);
    for (const auto& c : cells) {
      CHECK(c.h == 32);
      CHECK(c.w == 32);
      CHECK(c.y0 == c.row * 32);
      CHECK(c.x0 == c.col * 32);
    }
  }

  TEST_CASE("230 / 7 follows the floor partition") {
    const auto want = oracle::floor_boundaries(230, 7);
    CHECK(want == std::vector<int>{0, 32, 65, 98, 131, 164, 197, 230});
    const auto cells = grid_partition(230, 230, 7, 7);
    int sum = 0;
    for (int r = 0; r < 7; ++r) {
      const auto& c = cells[static_cast<std::size_t>(r) * 7];
      CHECK(c.y0 == want[r]);
      CHECK(c.h == want[r + 1] - want[r]);
      sum += c.h;
    }
    CHECK(sum == 230);
  }

  TEST_CASE("partition tiles random frames exactly") {
    CounterRng rng(5);
    for (int n = 0; n < 50; ++n) {
      const int gh = rng.uniform_int(1, 9), gw = rng.uniform_int(1, 9);
      const int h = rng.uniform_int(gh, 300), w = rng.uniform_int(gw, 300);
      const auto cells = grid_partition(h, w, gh, gw);
      std::vector<int> cover(static_cast<std::size_t>(h) * w, 0);
      for (const auto& c : cells) {
        CHECK(c.h >= 1);
        CHECK(c.w >= 1);
        for (int y = c.y0; y < c.y0 + c.h; ++y)
          for (int x = c.x0; x < c.x0 + c.w; ++x) ++cover[static_cast<std::size_t>(y) * w + x];
      }
      CHECK(std::all_of(cover.begin(), cover.end(), [](int v) { return v == 1; }));
      const auto rb = oracle::floor_boundaries(h, gh);
      for (const auto& c : cells) CHECK(c.y0 == rb[c.row]);
    }
  }

  TEST_CASE("minimal and too-fine grids") {
    const auto cells = grid_partition(7, 7, 7, 7);
    for (const auto& c : cells) CHECK((c.h == 1 && c.w == 1));
    try {
      grid_partition(6, 7, 7, 7);
      FAIL("expected GridTooFine");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::GridTooFine);
    }
  }

  TEST_CASE("center and forced offsets") {
    const GridCell big{0, 0, 0, 0, 154, 274};
    CHECK(choose_offsets(std::span(&big, 1), 32, 32, OffsetPolicy::Center, 0, 0)[0] == Offset{61, 121});
    const GridCell tight{2, 3, 64, 96, 32, 32};
    for (auto policy : {OffsetPolicy::Center, OffsetPolicy::Random})
      for (std::uint64_t seed : {0ull, 1ull, 99ull})
        CHECK(choose_offsets(std::span(&tight, 1), 32, 32, policy, seed, 4)[0] == Offset{64, 96});
    const GridCell small{0, 0, 0, 0, 31, 40};
    try {
      choose_offsets(std::span(&small, 1), 32, 32, OffsetPolicy::Center, 0, 0);
      FAIL("expected CellSmallerThanFragment");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::CellSmallerThanFragment);
    }
  }

  TEST_CASE("random offsets: bounds, reproducibility, order independence") {
    const GridCell big{0, 0, 0, 0, 154, 274};
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const auto o = choose_offsets(std::span(&big, 1), 32, 32, OffsetPolicy::Random, seed, 1)[0];
      CHECK(o.y >= 0);
      CHECK(o.y <= 122);
      CHECK(o.x >= 0);
      CHECK(o.x <= 242);
      CHECK(o == choose_offsets(std::span(&big, 1), 32, 32, OffsetPolicy::Random, seed, 1)[0]);
    }
    auto cells = grid_partition(1080, 1920, 7, 7);
    const auto forward = choose_offsets(cells, 32, 32, OffsetPolicy::Random, 42, 3);
    std::reverse(cells.begin(), cells.end());
    auto backward = choose_offsets(cells, 32, 32, OffsetPolicy::Random, 42, 3);
    std::reverse(backward.begin(), backward.end());
    CHECK(forward == backward);
    // different levels draw independently unless aligned
    CHECK(forward != choose_offsets(cells, 32, 32, OffsetPolicy::Random, 42, 4));
    std::reverse(cells.begin(), cells.end());
    CHECK(choose_offsets(cells, 32, 32, OffsetPolicy::Random, 42, 3, true) ==
          choose_offsets(cells, 32, 32, OffsetPolicy::Random, 42, 9, true));
  }

  TEST_CASE("random offsets are uniform over the valid positions") {
    // 8x8 valid positions, 10000 seeds; df = 63, chi2 critical at p = 0.01 is 92.010
    const GridCell cell{1, 2, 40, 80, 39, 39};
    std::vector<int> joint(64, 0), ys(8, 0), xs(8, 0);
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
      const auto o = choose_offsets(std::span(&cell, 1), 32, 32, OffsetPolicy::Random, seed, 0)[0];
      const int dy = o.y - 40, dx = o.x - 80;
      REQUIRE(dy >= 0);
      REQUIRE(dy < 8);
      REQUIRE(dx >= 0);
      REQUIRE(dx < 8);
      ++joint[dy * 8 + dx];
      ++ys[dy];
      ++xs[dx];
    }
    CHECK(chi_square(joint) < 92.010);
    // df = 7, critical 18.475
    CHECK(chi_square(ys) < 18.475);
    CHECK(chi_square(xs) < 18.475);
  }

  TEST_CASE("224 level with 7x7 grid samples itself") {
    const auto f = oracle::noise_frame(224, 224, 2);
    for (auto policy : {OffsetPolicy::Center, OffsetPolicy::Random}) {
      const auto m = sample_fragments(single_level(f), grid_config(7, 7, policy, 17));
      CHECK(m.frame(0) == f);
    }
  }

  TEST_CASE("1080p gather matches independent index recomputation") {
    const auto f = oracle::coordinate_frame(1080, 1920, 5);
    const auto m = sample_fragments(single_level(f, 0), grid_config(7, 7, OffsetPolicy::Center));
    const auto rb = oracle::floor_boundaries(1080, 7);
    const auto cb = oracle::floor_boundaries(1920, 7);
    REQUIRE(m.height() == 224);
    REQUIRE(m.width() == 224);
    long mismatches = 0;
    for (int y = 0; y < 224; ++y)
      for (int x = 0; x < 224; ++x) {
        const int r = y / 32, c = x / 32;
        const int sy = rb[r] + (rb[r + 1] - rb[r] - 32) / 2 + y % 32;
        const int sx = cb[c] + (cb[c + 1] - cb[c] - 32) / 2 + x % 32;
        for (int ch = 0; ch < 3; ++ch) mismatches += m.frame(0).pixel(y, x)[ch] != f.pixel(sy, sx)[ch];
        const auto src = m.source_of(y, x);
        mismatches += src.y != sy || src.x != sx;
      }
    CHECK(mismatches == 0);
  }

  TEST_CASE("random gather is a pure copy within each cell") {
    const auto f = oracle::coordinate_frame(500, 700, 1);
    const auto cfg = grid_config(7, 7, OffsetPolicy::Random, 8);
    const auto m = sample_fragments(single_level(f, 2), cfg);
    const auto cells = grid_partition(500, 700, 7, 7);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const auto& o = m.offsets()[i];
      CHECK(o.y >= cells[i].y0);
      CHECK(o.y <= cells[i].y0 + cells[i].h - 32);
      CHECK(o.x >= cells[i].x0);
      CHECK(o.x <= cells[i].x0 + cells[i].w - 32);
    }
    long bad = 0;
    for (int y = 0; y < 224; ++y)
      for (int x = 0; x < 224; ++x) {
        const auto s = m.source_of(y, x);
        for (int ch = 0; ch < 3; ++ch) bad += m.frame(0).pixel(y, x)[ch] != f.pixel(s.y, s.x)[ch];
      }
    CHECK(bad == 0);
  }

  TEST_CASE("constant level gives constant mosaic; shape independent of size") {
    CounterRng rng(3);
    for (int n = 0; n < 10; ++n) {
      const int h = rng.uniform_int(224, 900), w = rng.uniform_int(224, 900);
      const auto m = sample_fragments(single_level(FrameBuffer::filled(h, w, 5, 6, 7)),
                                      grid_config(7, 7, OffsetPolicy::Random, n));
      CHECK(m.frame(0) == FrameBuffer::filled(224, 224, 5, 6, 7));
    }
  }

  TEST_CASE("video: one offset set per level, static video gives static mosaic") {
    const auto f = oracle::noise_frame(300, 420, 6);
    std::vector<std::optional<FrameBuffer>> frames(5, f);
    const PyramidLevel level(0, {300, 420}, frames);
    const auto m = sample_fragments(level, grid_config(7, 7, OffsetPolicy::Random, 4));
    REQUIRE(m.frame_count() == 5);
    for (std::size_t t = 1; t < 5; ++t) CHECK(m.frame(t) == m.frame(0));

    std::vector<std::optional<FrameBuffer>> moving;
    for (int t = 0; t < 4; ++t) moving.emplace_back(oracle::coordinate_frame(300, 420, t));
    const auto mm = sample_fragments(PyramidLevel(1, {300, 420}, moving), grid_config(7, 7, OffsetPolicy::Random, 4));
    for (int t = 0; t < 4; ++t)
      for (int y = 0; y < 224; y += 13)
        for (int x = 0; x < 224; x += 11) {
          const auto s = mm.source_of(y, x);
          CHECK(mm.frame(t).pixel(y, x)[0] == moving[t]->pixel(s.y, s.x)[0]);
        }
  }
}
