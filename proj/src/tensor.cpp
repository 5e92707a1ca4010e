#include "sama/tensor.hpp"

#include <string>

#include "sama/error.hpp"

namespace sama {

FrameBuffer SampledTensor::frame(int t) const {
  const std::size_t bytes = static_cast<std::size_t>(height) * width * 3;
  const auto begin = data.begin() + static_cast<std::ptrdiff_t>(bytes * t);
  return FrameBuffer(height, width, std::vector<std::uint8_t>(begin, begin + static_cast<std::ptrdiff_t>(bytes)));
}

void SampledTensor::check_consistency() const {
  if (height < 1 || width < 1 || frames < 1) throw Error(ErrorCode::InvariantViolation, "tensor dims must be positive");
  if (n_scales < 1 || n_scales > 255) throw Error(ErrorCode::InvariantViolation, "n_scales out of range");
  if (data.size() != pixel_count() * 3) {
    throw Error(ErrorCode::InvariantViolation, "tensor payload has " + std::to_string(data.size()) + " bytes, expected " +
                                                   std::to_string(pixel_count() * 3));
  }
  if (kind == MediaKind::Image && frames != 1) throw Error(ErrorCode::InvariantViolation, "image tensor with T != 1");
  if (schedule.size() > 0xFFFF) throw Error(ErrorCode::InvariantViolation, "schedule too long");
  if (provenance) {
    if (provenance->size() != pixel_count()) {
      throw Error(ErrorCode::InvariantViolation, "provenance must cover every pixel exactly once");
    }
    for (const auto& p : *provenance) {
      if (p.scale_id >= n_scales) throw Error(ErrorCode::InvariantViolation, "provenance scale id out of range");
    }
  }
}

}  // namespace sama
