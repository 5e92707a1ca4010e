#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace sama {

/// One decoded RGB8 frame, row-major, 3 bytes per pixel.
///
/// Pixel storage is immutable and shared between copies, so frames can be
/// repeated inside a clip (cyclic frame selection, level 0 of a pyramid)
/// without duplicating the bytes. Build new pixels in a std::vector and hand
/// them to the constructor.
class FrameBuffer {
 public:
  static constexpr int kChannels = 3;

  /// Throws InvariantViolation unless height, width >= 1 and
  /// pixels.size() == height * width * 3.
  FrameBuffer(int height, int width, std::vector<std::uint8_t> pixels);

  /// Constant-color frame.
  static FrameBuffer filled(int height, int width, std::uint8_t r, std::uint8_t g, std::uint8_t b);

  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  std::size_t size_bytes() const noexcept { return pixels_->size(); }

  std::span<const std::uint8_t> bytes() const noexcept { return *pixels_; }
  const std::uint8_t* row(int y) const noexcept {
    return pixels_->data() + static_cast<std::size_t>(y) * width_ * kChannels;
  }
  const std::uint8_t* pixel(int y, int x) const noexcept { return row(y) + x * kChannels; }

  /// True when both frames refer to the same storage (not a value comparison).
  bool shares_storage_with(const FrameBuffer& other) const noexcept { return pixels_ == other.pixels_; }

  friend bool operator==(const FrameBuffer& a, const FrameBuffer& b) noexcept;

 private:
  int height_;
  int width_;
  std::shared_ptr<const std::vector<std::uint8_t>> pixels_;
};

/// Ordered frames of identical dimensions.
class MediaClip {
 public:
  /// Throws EmptyClip for no frames and MixedDimensions when sizes differ.
  explicit MediaClip(std::vector<FrameBuffer> frames, std::optional<double> nominal_fps = std::nullopt);

  std::size_t size() const noexcept { return frames_.size(); }
  int height() const noexcept { return frames_.front().height(); }
  int width() const noexcept { return frames_.front().width(); }
  const FrameBuffer& operator[](std::size_t i) const noexcept { return frames_[i]; }
  const std::vector<FrameBuffer>& frames() const noexcept { return frames_; }
  std::optional<double> nominal_fps() const noexcept { return nominal_fps_; }

 private:
  std::vector<FrameBuffer> frames_;
  std::optional<double> nominal_fps_;
};

}  // namespace sama
