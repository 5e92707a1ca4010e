#include "sama/frame.hpp"

#include <algorithm>
#include <string>

#include "sama/error.hpp"

namespace sama {

FrameBuffer::FrameBuffer(int height, int width, std::vector<std::uint8_t> pixels)
    : height_(height), width_(width) {
  if (height < 1 || width < 1) {
    throw Error(ErrorCode::InvariantViolation,
                "frame dimensions must be positive, got " + std::to_string(height) + "x" + std::to_string(width));
  }
  const auto expected = static_cast<std::size_t>(height) * width * kChannels;
  if (pixels.size() != expected) {
    throw Error(ErrorCode::InvariantViolation, "frame payload has " + std::to_string(pixels.size()) +
                                                   " bytes, expected " + std::to_string(expected));
  }
  pixels_ = std::make_shared<const std::vector<std::uint8_t>>(std::move(pixels));
}

FrameBuffer FrameBuffer::filled(int height, int width, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  std::vector<std::uint8_t> px(static_cast<std::size_t>(std::max(height, 0)) * std::max(width, 0) * kChannels);
  for (std::size_t i = 0; i < px.size(); i += kChannels) {
    px[i] = r;
    px[i + 1] = g;
    px[i + 2] = b;
  }
  return FrameBuffer(height, width, std::move(px));
}

bool operator==(const FrameBuffer& a, const FrameBuffer& b) noexcept {
  if (a.height_ != b.height_ || a.width_ != b.width_) return false;
  if (a.pixels_ == b.pixels_) return true;
  return *a.pixels_ == *b.pixels_;
}

MediaClip::MediaClip(std::vector<FrameBuffer> frames, std::optional<double> nominal_fps)
    : frames_(std::move(frames)), nominal_fps_(nominal_fps) {
  if (frames_.empty()) throw Error(ErrorCode::EmptyClip, "clip has no frames");
  const int h = frames_.front().height();
  const int w = frames_.front().width();
  for (std::size_t i = 1; i < frames_.size(); ++i) {
    if (frames_[i].height() != h || frames_[i].width() != w) {
      throw Error(ErrorCode::MixedDimensions, "frame " + std::to_string(i) + " is " +
                                                  std::to_string(frames_[i].height()) + "x" +
                                                  std::to_string(frames_[i].width()) + ", clip is " +
                                                  std::to_string(h) + "x" + std::to_string(w));
    }
  }
}

}  // namespace sama
