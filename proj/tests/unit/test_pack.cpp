#include <doctest.h>

#include <cstring>
#include <fstream>

#include "sama/container.hpp"
#include "sama/error.hpp"
#include "sama/image_io.hpp"
#include "sama/pipeline.hpp"
#include "sama/preview.hpp"
#include "support/oracles.hpp"

using namespace sama;

namespace {

SampledTensor tiny_image(bool with_provenance) {
  SampledTensor t;
  t.kind = MediaKind::Image;
  t.height = t.width = 8;
  t.n_scales = 2;
  t.spatial_mask = SpatialMaskKind::Patch;
  t.seed = 0x0102030405060708ull;
  for (int i = 0; i < 192; ++i) t.data.push_back(static_cast<std::uint8_t>(i * 7));
  if (with_provenance) {
    std::vector<ProvenanceEntry> p;
    for (int i = 0; i < 64; ++i)
      p.push_back({static_cast<std::uint8_t>(i % 2), 0, static_cast<std::uint32_t>(i / 8 + 100),
                   static_cast<std::uint32_t>(i % 8 + 70000)});
    t.provenance = p;
  }
  return t;
}

ErrorCode parse_code(const std::vector<std::uint8_t>& bytes) {
  try {
    parse_container(bytes);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvariantViolation;
}

std::uint32_t le32(const std::vector<std::uint8_t>& b, std::size_t at) {
  return b[at] | b[at + 1] << 8 | b[at + 2] << 16 | static_cast<std::uint32_t>(b[at + 3]) << 24;
}

}  // namespace

TEST_SUITE("pack") {
  TEST_CASE("8x8 image container size and header layout") {
    const auto plain = serialize_container(tiny_image(false));
    CHECK(plain.size() == kContainerFixedHeaderBytes + 192);
    const auto full = serialize_container(tiny_image(true));
    CHECK(full.size() == kContainerFixedHeaderBytes + 192 + 64 * kProvenanceEntryBytes);
    CHECK(full.size() == 33u + 192u + 704u);

    CHECK(std::memcmp(full.data(), "SAMA", 4) == 0);
    CHECK(full[4] == 1);  // version, LE
    CHECK(full[5] == 0);
    CHECK(full[6] == 1);  // image
    CHECK(le32(full, 7) == 8);
    CHECK(le32(full, 11) == 8);
    CHECK(le32(full, 15) == 1);
    CHECK(full[19] == 2);  // n_scales
    CHECK(full[20] == 2);  // patch
    CHECK(full[21] == 0);
    CHECK(full[22] == 0x08);  // seed low byte first
    CHECK(full[29] == 0x01);
    CHECK(full[30] == 0);  // schedule length
    CHECK(full[31] == 0);
    CHECK(full[32] == 1);  // provenance flag
    CHECK(full[33] == 0);  // first payload byte
    // first provenance entry: scale 0, frame 0, y 100, x 70000
    const std::size_t p0 = 33 + 192;
    CHECK(full[p0] == 0);
    CHECK(le32(full, p0 + 3) == 100);
    CHECK(le32(full, p0 + 7) == 70000);
  }

  TEST_CASE("round trip is the identity") {
    CHECK(parse_container(serialize_container(tiny_image(true))) == tiny_image(true));
    CHECK(parse_container(serialize_container(tiny_image(false))) == tiny_image(false));

    std::vector<FrameBuffer> frames;
    for (int t = 0; t < 32; ++t) frames.push_back(oracle::coordinate_frame(240, 300, t));
    const auto video = sample_video(MediaClip(frames), SamplerConfig::video_defaults()).tensor;
    oracle::TempDir dir("container");
    write_container(video, dir / "v.sama");
    CHECK(read_container(dir / "v.sama") == video);
    CHECK_FALSE(std::filesystem::exists(dir / "v.sama.tmp"));
    CHECK(std::filesystem::file_size(dir / "v.sama") ==
          33 + 16 + 224u * 224 * 32 * 3 + 224u * 224 * 32 * kProvenanceEntryBytes);
  }

  TEST_CASE("corrupt, truncated and future containers") {
    auto bytes = serialize_container(tiny_image(true));
    auto bad_magic = bytes;
    bad_magic[0] = 'X';
    CHECK(parse_code(bad_magic) == ErrorCode::UnsupportedFormat);
    auto v2 = bytes;
    v2[4] = 2;
    CHECK(parse_code(v2) == ErrorCode::UnsupportedFormat);
    auto truncated = bytes;
    truncated.pop_back();
    CHECK(parse_code(truncated) == ErrorCode::CorruptFile);
    CHECK(parse_code(std::vector<std::uint8_t>(bytes.begin(), bytes.begin() + 20)) == ErrorCode::CorruptFile);
    auto trailing = bytes;
    trailing.push_back(0);
    CHECK(parse_code(trailing) == ErrorCode::CorruptFile);
    auto bad_kind = bytes;
    bad_kind[6] = 9;
    CHECK(parse_code(bad_kind) == ErrorCode::CorruptFile);

    oracle::TempDir dir("corrupt");
    std::ofstream(dir / "t.sama", std::ios::binary).write(reinterpret_cast<const char*>(truncated.data()),
                                                           static_cast<std::streamsize>(truncated.size()));
    try {
      read_container(dir / "t.sama");
      FAIL("expected CorruptFile");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::CorruptFile);
    }
  }

  TEST_CASE("serialization is byte-deterministic") {
    const auto img = oracle::noise_frame(500, 700, 8);
    auto c = SamplerConfig::image_defaults();
    c.offset_policy = OffsetPolicy::Random;
    c.seed = 99;
    const auto a = serialize_container(sample_image(img, c).tensor);
    const auto b = serialize_container(sample_image(img, c).tensor);
    CHECK(a == b);
  }

  TEST_CASE("plain preview is the tensor") {
    const auto r = sample_image(oracle::noise_frame(300, 300, 1), SamplerConfig::image_defaults());
    const auto frames = render_preview(r.tensor, PreviewStyle::Plain);
    REQUIRE(frames.size() == 1);
    CHECK(frames[0] == r.tensor.frame(0));
  }

  TEST_CASE("single-scale tinted preview is a uniform tint") {
    auto c = SamplerConfig::image_defaults();
    c.spatial_mask = SpatialMaskKind::None;
    c.n_scales = 1;
    const auto r = sample_image(FrameBuffer::filled(300, 300, 40, 40, 40), c);
    const auto f = render_preview(r.tensor, PreviewStyle::Tinted)[0];
    const auto* first = f.pixel(0, 0);
    for (int y = 0; y < f.height(); ++y)
      for (int x = 0; x < f.width(); ++x)
        for (int ch = 0; ch < 3; ++ch) REQUIRE(f.pixel(y, x)[ch] == first[ch]);
    const auto col = scale_color(0, 1);
    CHECK(first[0] == (3 * 40 + col[0] + 2) / 4);
  }

  TEST_CASE("bordered checkerboard preview alternates outline colours") {
    auto c = SamplerConfig::image_defaults();
    c.grid_rows = c.grid_cols = 7;
    const auto r = sample_image(oracle::noise_frame(400, 400, 3), c);
    const auto f = render_preview(r.tensor, PreviewStyle::Bordered)[0];
    const auto c0 = scale_color(0, 2);
    const auto c1 = scale_color(1, 2);
    CHECK(c0 != c1);
    int raw = 0, coarse = 0;
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) {
        const auto* px = f.pixel(i * 32, j * 32 + 10);
        const std::array<std::uint8_t, 3> got = {px[0], px[1], px[2]};
        if (got == c0) ++raw;
        if (got == c1) ++coarse;
        CHECK((got == ((i + j) % 2 == 0 ? c0 : c1)));
      }
    CHECK(raw == 25);
    CHECK(coarse == 24);
  }

  TEST_CASE("tinted and bordered previews need provenance") {
    auto t = tiny_image(false);
    CHECK_NOTHROW(render_preview(t, PreviewStyle::Plain));
    try {
      render_preview(t, PreviewStyle::Tinted);
      FAIL("expected MissingProvenance");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::MissingProvenance);
    }
  }

  TEST_CASE("audit catches exactly one corrupted byte") {
    const auto r = sample_image(oracle::noise_frame(400, 500, 4), SamplerConfig::image_defaults());
    CHECK(provenance_audit(r.tensor, r.pyramid).mismatches == 0);
    auto broken = r.tensor;
    broken.data[broken.pixel_index(0, 17, 33) * 3 + 1] ^= 0x40;
    const auto audit = provenance_audit(broken, r.pyramid);
    CHECK(audit.mismatches == 1);
    REQUIRE(audit.first_mismatch.has_value());
    CHECK(*audit.first_mismatch == std::array<int, 3>{0, 17, 33});
  }

  TEST_CASE("progressive video shares are 2/32 per scale") {
    const auto r = sample_video(MediaClip({oracle::noise_frame(240, 240, 1)}), SamplerConfig::video_defaults());
    const auto audit = provenance_audit(r.tensor, r.pyramid);
    CHECK(audit.ok());
    for (double s : audit.scale_share) CHECK(s == doctest::Approx(2.0 / 32.0).epsilon(1e-12));
  }

  TEST_CASE("PGM encoder") {
    const std::vector<std::uint8_t> g = {0, 255, 255, 0};
    const auto pgm = encode_pgm(2, 2, g);
    const std::string head = "P5\n2 2\n255\n";
    REQUIRE(pgm.size() == head.size() + 4);
    CHECK(std::string(pgm.begin(), pgm.begin() + static_cast<std::ptrdiff_t>(head.size())) == head);
  }
}
