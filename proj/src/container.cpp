#include "sama/container.hpp"

#include <algorithm>
#include <cstring>
#include <string>

#include "sama/error.hpp"
#include "sama/image_io.hpp"

namespace sama {

namespace {

class LeWriter {
 public:
  explicit LeWriter(std::vector<std::uint8_t>& out) : out_(out) {}

  template <typename T>
  void put(T value) {
    for (std::size_t i = 0; i < sizeof(T); ++i) out_.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
  }
  void put_bytes(std::span<const std::uint8_t> bytes) {
    if (bytes.empty()) return;
    const std::size_t at = out_.size();
    out_.resize(at + bytes.size());
    std::memcpy(out_.data() + at, bytes.data(), bytes.size());
  }

 private:
  std::vector<std::uint8_t>& out_;
};

class LeReader {
 public:
  explicit LeReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  template <typename T>
  T get() {
    need(sizeof(T));
    T value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(static_cast<T>(bytes_[pos_ + i]) << (8 * i));
    pos_ += sizeof(T);
    return value;
  }
  std::span<const std::uint8_t> take(std::size_t n) {
    need(n);
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (remaining() < n) throw Error(ErrorCode::CorruptFile, "container truncated at byte " + std::to_string(pos_));
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

constexpr std::uint8_t kMagic[4] = {'S', 'A', 'M', 'A'};

}  // namespace

std::vector<std::uint8_t> serialize_container(const SampledTensor& t) {
  t.check_consistency();
  std::vector<std::uint8_t> out;
  const std::size_t prov_bytes = t.provenance ? t.pixel_count() * kProvenanceEntryBytes : 0;
  out.reserve(kContainerFixedHeaderBytes + t.schedule.size() + t.data.size() + prov_bytes);
  LeWriter w(out);
  w.put_bytes(kMagic);
  w.put<std::uint16_t>(kContainerVersion);
  w.put<std::uint8_t>(static_cast<std::uint8_t>(t.kind));
  w.put<std::uint32_t>(static_cast<std::uint32_t>(t.height));
  w.put<std::uint32_t>(static_cast<std::uint32_t>(t.width));
  w.put<std::uint32_t>(static_cast<std::uint32_t>(t.frames));
  w.put<std::uint8_t>(static_cast<std::uint8_t>(t.n_scales));
  w.put<std::uint8_t>(static_cast<std::uint8_t>(t.spatial_mask));
  w.put<std::uint8_t>(static_cast<std::uint8_t>(t.temporal_mask));
  w.put<std::uint64_t>(t.seed);
  w.put<std::uint16_t>(static_cast<std::uint16_t>(t.schedule.size()));
  w.put_bytes(t.schedule);
  w.put<std::uint8_t>(t.provenance ? 1 : 0);
  w.put_bytes(t.data);
  if (t.provenance) {
    for (const auto& p : *t.provenance) {
      w.put<std::uint8_t>(p.scale_id);
      w.put<std::uint16_t>(p.src_frame);
      w.put<std::uint32_t>(p.src_y);
      w.put<std::uint32_t>(p.src_x);
    }
  }
  return out;
}

SampledTensor parse_container(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || !std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) {
    throw Error(ErrorCode::UnsupportedFormat, "not a SAMA container");
  }
  LeReader r(bytes.subspan(4));
  const auto version = r.get<std::uint16_t>();
  if (version != kContainerVersion) {
    throw Error(ErrorCode::UnsupportedFormat, "container version " + std::to_string(version));
  }
  SampledTensor t;
  const auto kind = r.get<std::uint8_t>();
  if (kind != 1 && kind != 2) throw Error(ErrorCode::CorruptFile, "unknown media kind " + std::to_string(kind));
  t.kind = static_cast<MediaKind>(kind);
  const auto h = r.get<std::uint32_t>();
  const auto w = r.get<std::uint32_t>();
  const auto frames = r.get<std::uint32_t>();
  if (h == 0 || w == 0 || frames == 0 || h > (1u << 20) || w > (1u << 20) || frames > 0xFFFFu) {
    throw Error(ErrorCode::CorruptFile, "container dimensions out of range");
  }
  t.height = static_cast<int>(h);
  t.width = static_cast<int>(w);
  t.frames = static_cast<int>(frames);
  t.n_scales = r.get<std::uint8_t>();
  const auto spatial = r.get<std::uint8_t>();
  const auto temporal = r.get<std::uint8_t>();
  if (spatial > 2 || temporal > 3 || t.n_scales == 0) throw Error(ErrorCode::CorruptFile, "bad mask metadata");
  t.spatial_mask = static_cast<SpatialMaskKind>(spatial);
  t.temporal_mask = static_cast<TemporalMaskKind>(temporal);
  t.seed = r.get<std::uint64_t>();
  const auto schedule_len = r.get<std::uint16_t>();
  const auto schedule = r.take(schedule_len);
  t.schedule.assign(schedule.begin(), schedule.end());
  const auto flags = r.get<std::uint8_t>();
  if (flags & ~1u) throw Error(ErrorCode::CorruptFile, "unknown container flags");

  const std::size_t pixels = t.pixel_count();
  const std::size_t payload = pixels * 3;
  const std::size_t prov_bytes = (flags & 1u) ? pixels * kProvenanceEntryBytes : 0;
  if (r.remaining() != payload + prov_bytes) {
    throw Error(ErrorCode::CorruptFile, "container body has " + std::to_string(r.remaining()) + " bytes, expected " +
                                            std::to_string(payload + prov_bytes));
  }
  const auto data = r.take(payload);
  t.data.assign(data.begin(), data.end());
  if (flags & 1u) {
    std::vector<ProvenanceEntry> prov(pixels);
    for (auto& p : prov) {
      p.scale_id = r.get<std::uint8_t>();
      p.src_frame = r.get<std::uint16_t>();
      p.src_y = r.get<std::uint32_t>();
      p.src_x = r.get<std::uint32_t>();
      if (p.scale_id >= t.n_scales) throw Error(ErrorCode::CorruptFile, "provenance scale id out of range");
    }
    t.provenance = std::move(prov);
  }
  for (auto s : t.schedule) {
    if (s >= t.n_scales) throw Error(ErrorCode::CorruptFile, "schedule references scale out of range");
  }
  if (t.kind == MediaKind::Image && t.frames != 1) throw Error(ErrorCode::CorruptFile, "image container with T != 1");
  return t;
}

void write_container(const SampledTensor& tensor, const std::filesystem::path& path) {
  write_file_atomic(path, serialize_container(tensor));
}

SampledTensor read_container(const std::filesystem::path& path) { return parse_container(read_file(path)); }

}  // namespace sama
