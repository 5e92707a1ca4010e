// Acceptance suite: one PASS/FAIL line per headline property.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "sama/clip.hpp"
#include "sama/container.hpp"
#include "sama/error.hpp"
#include "sama/head_properties.hpp"
#include "sama/image_io.hpp"
#include "sama/masks.hpp"
#include "sama/pipeline.hpp"
#include "sama/preview.hpp"
#include "sama/pyramid.hpp"
#include "sama/random.hpp"
#include "support/oracles.hpp"

using namespace sama;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

// Collects the first failure message; later ones only bump the count.
class Verdict {
 public:
  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (failures_++ == 0) first_ = what;
  }
  Outcome finish(const std::string& summary) const {
    if (failures_ == 0) return {true, summary};
    return {false, std::to_string(failures_) + " failure(s), first: " + first_};
  }

 private:
  int failures_ = 0;
  std::string first_;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string fmt(double v, int precision = 3) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

MediaClip solid_clip(int count, int distinct, int h, int w, CounterRng& rng) {
  std::vector<FrameBuffer> pool;
  for (int i = 0; i < distinct; ++i)
    pool.push_back(FrameBuffer::filled(h, w, static_cast<std::uint8_t>(rng.uniform_int(0, 255)),
                                       static_cast<std::uint8_t>(rng.uniform_int(0, 255)),
                                       static_cast<std::uint8_t>(rng.uniform_int(0, 255))));
  std::vector<FrameBuffer> frames;
  for (int t = 0; t < count; ++t) frames.push_back(pool[t % distinct]);
  return MediaClip(frames);
}

MediaClip coded_clip(int frames, int h, int w, int salt = 0) {
  std::vector<FrameBuffer> f;
  for (int t = 0; t < frames; ++t) f.push_back(oracle::coordinate_frame(h, w, salt + t));
  return MediaClip(f);
}

bool partitions_unity(const ScaleIndexMask& m) {
  std::vector<int> sum(m.ids.size(), 0);
  for (int s = 0; s < m.n_scales; ++s) {
    const auto ind = m.indicator(s);
    for (std::size_t i = 0; i < ind.size(); ++i) sum[i] += ind[i];
  }
  return std::all_of(sum.begin(), sum.end(), [](int v) { return v == 1; });
}

// Per-frame scale id, or -1 if the frame mixes scales.
std::vector<int> frame_scales(const SampledTensor& t) {
  std::vector<int> out;
  for (int f = 0; f < t.frames; ++f) {
    const auto first = (*t.provenance)[t.pixel_index(f, 0, 0)].scale_id;
    bool uniform = true;
    for (int y = 0; y < t.height && uniform; ++y)
      for (int x = 0; x < t.width; ++x)
        if ((*t.provenance)[t.pixel_index(f, y, x)].scale_id != first) {
          uniform = false;
          break;
        }
    out.push_back(uniform ? first : -1);
  }
  return out;
}

// ---------------------------------------------------------------------------

Outcome shape_constants() {
  Verdict v;
  CounterRng rng(0x5348);
  for (int n = 0; n < 200; ++n) {
    const int h = rng.uniform_int(224, 4096), w = rng.uniform_int(224, 4096);
    const int frames = rng.uniform_int(1, 3);
    const auto clip = solid_clip(frames, std::min(frames, 2), h, w, rng);
    auto vqa = SamplerConfig::video_defaults();
    vqa.seed = static_cast<std::uint64_t>(n);
    vqa.offset_policy = n % 2 ? OffsetPolicy::Random : OffsetPolicy::Center;
    const auto t = sample_video(clip, vqa).tensor;
    v.require(t.height == 224 && t.width == 224 && t.frames == 32 && t.data.size() == 224u * 224 * 32 * 3,
              "VQA " + std::to_string(h) + "x" + std::to_string(w));

    auto iqa = SamplerConfig::image_defaults();
    iqa.seed = static_cast<std::uint64_t>(n);
    const auto img = sample_image(clip[0], iqa).tensor;
    v.require(img.height == 256 && img.width == 256 && img.frames == 1 && img.data.size() == 256u * 256 * 3,
              "IQA " + std::to_string(h) + "x" + std::to_string(w));
  }
  return v.finish("200 resolutions in [224,4096]: VQA 224x224x32x3, IQA 256x256x3");
}

Outcome pyramid_schedule() {
  Verdict v;
  const auto s = scale_schedule(1080, 1920, 224, 16);
  double worst = 0;
  for (int k = 0; k < 16; ++k) {
    const int m = std::min(s[k].height, s[k].width);
    worst = std::max(worst, std::abs(m - oracle::linear_min_side(1080, 224, 16, k)));
    if (k > 0) v.require(m < std::min(s[k - 1].height, s[k - 1].width), "min-side not decreasing");
  }
  v.require(worst <= 0.5, "deviation " + fmt(worst) + " > 0.5");
  v.require(std::min(s.back().height, s.back().width) == 224, "last level is not 224");
  const auto two = scale_schedule(1080, 1920, 224, 2);
  v.require(two[1] == LevelSize{224, 398}, "two-level 1080p is not (224,398)");
  const auto p = build_pyramid(FrameBuffer::filled(1080, 1920, 1, 2, 3), [] {
    auto c = SamplerConfig::video_defaults();
    c.n_scales = 2;
    return c;
  }());
  v.require(p[1].size() == LevelSize{224, 398}, "built pyramid level 1 size");
  return v.finish("16 levels within " + fmt(worst) + " of the linear interpolant, last 224; 2 levels (224,398)");
}

Outcome mask_partition() {
  Verdict v;
  int configs = 0;
  for (auto kind : {SpatialMaskKind::Window, SpatialMaskKind::Patch})
    for (int side : {224, 256}) {
      const auto m = make_spatial_mask(kind, side, side);
      v.require(partitions_unity(ScaleIndexMask::from_spatial(m, 0, 1, 2)), "spatial partition");
      ++configs;
      for (int n : {3, 4}) {
        v.require(partitions_unity(make_interlace_mask(n, side, side, spatial_block_size(kind))), "interlace");
        ++configs;
      }
    }
  // every pipeline plan: each frame's mask is a partition
  for (auto tm : {TemporalMaskKind::Progressive, TemporalMaskKind::Choppy, TemporalMaskKind::Mixed})
    for (auto sm : {SpatialMaskKind::None, SpatialMaskKind::Window, SpatialMaskKind::Patch}) {
      auto c = SamplerConfig::video_defaults();
      c.temporal_mask = tm;
      c.spatial_mask = sm;
      c.n_scales = required_scales(tm, 32);
      const auto plan = plan_scales(c, true);
      for (int t = 0; t < plan.frames; ++t) v.require(partitions_unity(plan.mask_for(t)), "plan partition");
      ++configs;
    }

  const auto window = make_spatial_mask(SpatialMaskKind::Window, 224, 224);
  int ones = 0, zeros = 0;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) (window.at(i * 32, j * 32) ? ones : zeros)++;
  v.require(ones == 25 && zeros == 24, "window tiles " + std::to_string(ones) + "/" + std::to_string(zeros));
  const auto patch = make_spatial_mask(SpatialMaskKind::Patch, 224, 224);
  int pones = 0;
  for (int i = 0; i < 56; ++i)
    for (int j = 0; j < 56; ++j) pones += patch.at(i * 4, j * 4);
  v.require(pones == 1568 && 3136 - pones == 1568, "patch tiles " + std::to_string(pones));
  return v.finish(std::to_string(configs) + " mask configurations partition unity; window 25/24, patch 1568/1568");
}

Outcome gather_exactness() {
  Verdict v;
  CounterRng rng(0x4741);
  std::size_t pixels = 0;
  int images = 0, videos = 0;
  for (int run = 0; run < 50; ++run) {
    SamplerConfig c;
    c.grid_rows = rng.uniform_int(4, 8);
    c.grid_cols = rng.uniform_int(4, 8);
    c.frag_h = c.frag_w = rng.uniform_int(0, 1) ? 32 : 16;
    c.offset_policy = rng.uniform_int(0, 1) ? OffsetPolicy::Random : OffsetPolicy::Center;
    c.seed = rng.next_u64();
    const bool video = run % 2 == 1;
    const bool window_ok = c.frag_h == 32;
    const int spatial_pick = rng.uniform_int(0, window_ok ? 2 : 1);
    c.spatial_mask = spatial_pick == 0 ? SpatialMaskKind::None
                                       : (spatial_pick == 1 ? SpatialMaskKind::Patch : SpatialMaskKind::Window);
    const int target = c.target_min_side();
    const int h = rng.uniform_int(std::max(8, target / 2), 3 * target);
    const int w = rng.uniform_int(std::max(8, target / 2), 3 * target);
    SampleResult r;
    if (!video) {
      c.temporal_mask = TemporalMaskKind::None;
      c.frames_out = 1;
      c.n_scales = c.spatial_mask == SpatialMaskKind::None ? 1 : rng.uniform_int(2, 4);
      r = sample_image(oracle::noise_frame(h, w, static_cast<std::uint32_t>(run)), c);
      ++images;
    } else {
      const int pick = rng.uniform_int(0, 3);
      c.temporal_mask = static_cast<TemporalMaskKind>(pick);
      c.frames_out = 4 * rng.uniform_int(1, 4);
      if (c.temporal_mask == TemporalMaskKind::None)
        c.n_scales = c.spatial_mask == SpatialMaskKind::None ? 1 : 2;
      else
        c.n_scales = required_scales(c.temporal_mask, c.frames_out);
      const int clip_len = rng.uniform_int(1, 24);
      r = sample_video(coded_clip(clip_len, h, w, run), c);
      ++videos;
    }
    const auto audit = provenance_audit(r.tensor, r.pyramid);
    pixels += audit.pixels_checked;
    v.require(audit.ok(), "run " + std::to_string(run) + ": " + std::to_string(audit.mismatches) + " mismatches");
  }
  return v.finish(std::to_string(images) + " image + " + std::to_string(videos) + " video runs, " +
                  std::to_string(pixels) + " pixels, 0 mismatches");
}

Outcome temporal_schedules() {
  Verdict v;
  const auto clip = coded_clip(48, 240, 256);
  auto run = [&](TemporalMaskKind kind) {
    auto c = SamplerConfig::video_defaults();
    c.temporal_mask = kind;
    c.n_scales = required_scales(kind, 32);
    return frame_scales(sample_video(clip, c).tensor);
  };
  std::vector<int> prog, mixed;
  for (int t = 0; t < 32; ++t) prog.push_back(t / 2);
  for (int t = 0; t < 32; ++t) mixed.push_back((t % 16) / 2);
  v.require(run(TemporalMaskKind::Progressive) == prog, "progressive");
  const auto chop = run(TemporalMaskKind::Choppy);
  for (int t = 0; t < 32; ++t) v.require(chop[t] == (t % 4 < 2 ? 0 : 1), "choppy frame " + std::to_string(t));
  v.require(run(TemporalMaskKind::Mixed) == mixed, "mixed");
  return v.finish("progressive [0,0,1,1..15,15], choppy period 4 (finest/coarsest), mixed 2x[0..7]");
}

Outcome determinism() {
  Verdict v;
  oracle::TempDir dir("determinism");
  auto vcfg = SamplerConfig::video_defaults();
  vcfg.offset_policy = OffsetPolicy::Random;
  vcfg.seed = 20240601;
  auto icfg = SamplerConfig::image_defaults();
  icfg.offset_policy = OffsetPolicy::Random;
  icfg.seed = 7;
  const auto clip = coded_clip(70, 360, 480);
  const auto image = oracle::noise_frame(720, 1280, 5);
  int files = 0;
  auto produce = [&](const char* threads) {
    ::setenv("SAMA_THREADS", threads, 1);
    const auto vpath = dir / ("v" + std::to_string(files) + ".sama");
    const auto ipath = dir / ("i" + std::to_string(files) + ".sama");
    ++files;
    write_container(sample_video(clip, vcfg).tensor, vpath);
    write_container(sample_image(image, icfg).tensor, ipath);
    return std::pair{read_file(vpath), read_file(ipath)};
  };
  const auto ref = produce("1");
  for (const char* threads : {"1", "1", "4", "4", "4"}) {
    const auto got = produce(threads);
    v.require(got.first == ref.first, std::string("video container differs at SAMA_THREADS=") + threads);
    v.require(got.second == ref.second, std::string("image container differs at SAMA_THREADS=") + threads);
  }
  ::unsetenv("SAMA_THREADS");
  return v.finish(std::to_string(files) + " container pairs byte-identical (3 runs each at SAMA_THREADS=1 and 4)");
}

Outcome attention_reductions() {
  Verdict v;
  const auto results = head::run_head_properties(0xA77E, 100);
  std::string worst;
  for (const auto& r : results) {
    v.require(r.passed && r.instances >= 100,
              r.name + " worst " + fmt(r.worst) + " > " + fmt(r.tolerance) + " over " + std::to_string(r.instances));
  }
  auto find = [&](const std::string& prefix) {
    for (const auto& r : results)
      if (r.name.rfind(prefix, 0) == 0) return r.worst;
    return std::nan("");
  };
  return v.finish("R=0 add " + fmt(find("additive")) + ", R=1 mul " + fmt(find("multiplicative")) + ", row sums " +
                  fmt(find("softmax")) + ", grad add/mul rel " + fmt(find("d/dR additive")) + "/" +
                  fmt(find("d/dR multiplicative")) + " over 100 instances");
}

Outcome complexity() {
  Verdict v;
  const auto frame = oracle::noise_frame(1080, 1920, 11);
  auto sama_cfg = SamplerConfig::image_defaults();
  sama_cfg.grid_rows = sama_cfg.grid_cols = 7;
  auto single_cfg = sama_cfg;
  single_cfg.spatial_mask = SpatialMaskKind::None;
  single_cfg.n_scales = 1;

  const auto sama_pyr = build_pyramid(frame, sama_cfg);
  const auto single_pyr = build_pyramid(frame, single_cfg);
  const auto sama_plan = plan_scales(sama_cfg, false);
  const auto single_plan = plan_scales(single_cfg, false);

  // offsets are part of the stage: both paths pick them per run
  auto time_stage = [](const Pyramid& p, const ScalePlan& plan, const SamplerConfig& c) {
    constexpr int kInner = 25;
    const auto t0 = Clock::now();
    std::size_t sink = 0;
    for (int i = 0; i < kInner; ++i) sink += gather_interlaced(p, pyramid_offsets(p, c), plan, c).data[i];
    const double dt = seconds_since(t0) / kInner;
    return sink == SIZE_MAX ? -dt : dt;
  };
  ::setenv("SAMA_THREADS", "1", 1);
  std::vector<double> sama_t, single_t;
  for (int run = 0; run < 20; ++run) {
    // interleave so drift hits both paths equally
    single_t.push_back(time_stage(single_pyr, single_plan, single_cfg));
    sama_t.push_back(time_stage(sama_pyr, sama_plan, sama_cfg));
  }
  const double ratio = median(sama_t) / median(single_t);
  v.require(ratio <= 1.5, "gather+compose ratio " + fmt(ratio) + " > 1.5");

  std::vector<double> pyr_med;
  for (int n : {2, 4, 8, 16}) {
    auto c = SamplerConfig::video_defaults();
    c.n_scales = n;
    std::vector<double> ts;
    for (int run = 0; run < 7; ++run) {
      const auto t0 = Clock::now();
      const auto p = build_pyramid(frame, c);
      ts.push_back(seconds_since(t0));
      if (p.size() != static_cast<std::size_t>(n)) ts.back() = -1;
    }
    pyr_med.push_back(median(ts));
  }
  ::unsetenv("SAMA_THREADS");
  for (std::size_t i = 1; i < pyr_med.size(); ++i)
    v.require(pyr_med[i] > pyr_med[i - 1], "pyramid time not monotone at n=" + std::to_string(2 << i));
  return v.finish("gather+compose SAMA/single = " + fmt(ratio) + " (" + fmt(median(sama_t) * 1e3) + " ms vs " +
                  fmt(median(single_t) * 1e3) + " ms); pyramid ms n=2,4,8,16: " + fmt(pyr_med[0] * 1e3) + ", " +
                  fmt(pyr_med[1] * 1e3) + ", " + fmt(pyr_med[2] * 1e3) + ", " + fmt(pyr_med[3] * 1e3));
}

Outcome degenerate_inputs() {
  Verdict v;
  auto check_all = [&](const std::string& name, const SampleResult& r, const SamplerConfig& c, bool video,
                       const std::function<SampleResult()>& again) {
    try {
      check_output_shape(r.tensor, c, video);
    } catch (const Error& e) {
      v.require(false, name + ": " + e.what());
    }
    v.require(provenance_audit(r.tensor, r.pyramid).ok(), name + ": audit");
    const auto plan = plan_scales(c, video);
    for (int t = 0; t < plan.frames; ++t) v.require(partitions_unity(plan.mask_for(t)), name + ": partition");
    v.require(serialize_container(again().tensor) == serialize_container(r.tensor), name + ": determinism");
    v.require(parse_container(serialize_container(r.tensor)) == r.tensor, name + ": round trip");
  };
  try {
    const auto dot = FrameBuffer::filled(1, 1, 200, 100, 50);
    const auto iqa = SamplerConfig::image_defaults();
    check_all("1x1 image", sample_image(dot, iqa), iqa, false, [&] { return sample_image(dot, iqa); });

    const MediaClip one({oracle::noise_frame(360, 640, 2)});
    const auto vqa = SamplerConfig::video_defaults();
    check_all("single-frame video", sample_video(one, vqa), vqa, true, [&] { return sample_video(one, vqa); });

    const auto exact = oracle::noise_frame(224, 224, 3);
    auto iqa7 = iqa;
    iqa7.grid_rows = iqa7.grid_cols = 7;
    check_all("224x224 image", sample_image(exact, iqa7), iqa7, false, [&] { return sample_image(exact, iqa7); });
    const MediaClip exact_clip({exact, oracle::noise_frame(224, 224, 4)});
    check_all("224x224 video", sample_video(exact_clip, vqa), vqa, true,
              [&] { return sample_video(exact_clip, vqa); });
    const MediaClip dot_clip({dot});
    check_all("1x1 single-frame video", sample_video(dot_clip, vqa), vqa, true,
              [&] { return sample_video(dot_clip, vqa); });
  } catch (const std::exception& e) {
    v.require(false, std::string("threw: ") + e.what());
  }
  return v.finish("1x1 image, single-frame video, 224x224 image/video: shape, audit, partition, determinism");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"shape-constants", shape_constants},       {"pyramid-schedule", pyramid_schedule},
      {"mask-partition", mask_partition},         {"gather-exactness", gather_exactness},
      {"temporal-schedules", temporal_schedules}, {"determinism", determinism},
      {"attention-reductions", attention_reductions}, {"complexity", complexity},
      {"degenerate-inputs", degenerate_inputs},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("uncaught: ") + e.what()};
    }
    failed += !o.passed;
    std::printf("%s %-21s %s [%.1fs]\n", o.passed ? "PASS" : "FAIL", c.name, o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
