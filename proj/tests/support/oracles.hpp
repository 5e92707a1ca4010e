#pragma once

// Independent reference computations used only by tests. Nothing here calls
// the library routine it is used to check.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <unistd.h>
#include <string>
#include <vector>

#include "sama/frame.hpp"
#include "sama/scale_head.hpp"

namespace sama::oracle {

/// Scalar half-pixel bilinear sample of one channel, evaluated as the
/// four-term weighted sum.
inline double bilinear_sample(const FrameBuffer& f, int out_h, int out_w, int y, int x, int ch) {
  auto coord = [](int o, int in, int out) {
    double s = (o + 0.5) * in / out - 0.5;
    if (s < 0) s = 0;
    if (s > in - 1) s = in - 1;
    return s;
  };
  const double sy = coord(y, f.height(), out_h);
  const double sx = coord(x, f.width(), out_w);
  const int y0 = static_cast<int>(sy);
  const int x0 = static_cast<int>(sx);
  const int y1 = y0 + 1 < f.height() ? y0 + 1 : y0;
  const int x1 = x0 + 1 < f.width() ? x0 + 1 : x0;
  const double wy = sy - y0;
  const double wx = sx - x0;
  return (1 - wy) * (1 - wx) * f.pixel(y0, x0)[ch] + (1 - wy) * wx * f.pixel(y0, x1)[ch] +
         wy * (1 - wx) * f.pixel(y1, x0)[ch] + wy * wx * f.pixel(y1, x1)[ch];
}

/// Min-side of level k of a linear schedule, evaluated in floating point.
inline double linear_min_side(double raw_min, double target, int levels, int k) {
  return levels == 1 ? raw_min : raw_min + k * (target - raw_min) / (levels - 1);
}

/// Floor-partition boundaries by brute-force counting: boundary r is the
/// number of p in [1, size] with p * grid <= r * size.
inline std::vector<int> floor_boundaries(int size, int grid) {
  std::vector<int> b;
  for (int r = 0; r <= grid; ++r) {
    int count = 0;
    for (int p = 1; p <= size; ++p)
      if (static_cast<long>(p) * grid <= static_cast<long>(r) * size) ++count;
    b.push_back(count);
  }
  return b;
}

/// Dense attention: explicit exp/normalize loops, no shared code with the
/// library implementation.
inline head::Matrix dense_attention(const head::Matrix& logits, const head::Matrix& v) {
  const auto L = logits.rows();
  head::Matrix out = head::Matrix::Zero(L, v.cols());
  for (Eigen::Index i = 0; i < L; ++i) {
    double mx = logits(i, 0);
    for (Eigen::Index j = 1; j < L; ++j) mx = std::max(mx, logits(i, j));
    double z = 0;
    std::vector<double> e(L);
    for (Eigen::Index j = 0; j < L; ++j) z += (e[j] = std::exp(logits(i, j) - mx));
    for (Eigen::Index j = 0; j < L; ++j)
      for (Eigen::Index c = 0; c < v.cols(); ++c) out(i, c) += e[j] / z * v(j, c);
  }
  return out;
}

inline head::Matrix dense_logits(const head::Matrix& q, const head::Matrix& k, const head::Matrix& b) {
  const auto L = q.rows();
  head::Matrix s(L, L);
  for (Eigen::Index i = 0; i < L; ++i)
    for (Eigen::Index j = 0; j < L; ++j) {
      double dot = 0;
      for (Eigen::Index c = 0; c < q.cols(); ++c) dot += q(i, c) * k(j, c);
      s(i, j) = dot / std::sqrt(static_cast<double>(q.cols())) + b(i, j);
    }
  return s;
}

/// Frame whose pixel values encode their coordinates, so any misplaced
/// gather shows up as a byte mismatch.
inline FrameBuffer coordinate_frame(int h, int w, int salt = 0) {
  std::vector<std::uint8_t> px(static_cast<std::size_t>(h) * w * 3);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      auto* p = px.data() + (static_cast<std::size_t>(y) * w + x) * 3;
      p[0] = static_cast<std::uint8_t>(y * 7 + x * 3 + salt);
      p[1] = static_cast<std::uint8_t>(x * 5 + (y >> 3) + salt * 3);
      p[2] = static_cast<std::uint8_t>((y ^ x) + salt * 11);
    }
  return FrameBuffer(h, w, std::move(px));
}

inline FrameBuffer noise_frame(int h, int w, std::uint32_t seed) {
  std::mt19937 gen(seed);
  std::vector<std::uint8_t> px(static_cast<std::size_t>(h) * w * 3);
  for (auto& b : px) b = static_cast<std::uint8_t>(gen() & 0xFF);
  return FrameBuffer(h, w, std::move(px));
}

/// Self-deleting scratch directory.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("sama_test_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace sama::oracle
