#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sama/clip.hpp"
#include "sama/container.hpp"
#include "sama/head_properties.hpp"
#include "sama/image_io.hpp"
#include "sama/masks.hpp"
#include "sama/parallel.hpp"
#include "sama/pipeline.hpp"
#include "sama/preview.hpp"
#include "sama/random.hpp"

namespace sama::cli {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

[[noreturn]] void bad(const std::string& message) { throw Error(ErrorCode::InvalidConfig, message); }

struct Output {
  fs::path path;
  std::vector<std::uint8_t> bytes;
};

// Each file goes through temp+rename; on failure the ones already written are removed.
void commit(const std::vector<Output>& outputs) {
  std::vector<fs::path> written;
  try {
    for (const auto& o : outputs) {
      write_file_atomic(o.path, o.bytes);
      written.push_back(o.path);
    }
  } catch (...) {
    for (const auto& p : written) {
      std::error_code ec;
      fs::remove(p, ec);
    }
    throw;
  }
  for (const auto& o : outputs) std::cout << "wrote " << o.path.string() << " (" << o.bytes.size() << " bytes)\n";
}

fs::path with_suffix(const fs::path& base, const std::string& suffix) {
  return base.parent_path() / (base.stem().string() + suffix);
}

FrameBuffer contact_sheet(const std::vector<FrameBuffer>& frames) {
  if (frames.size() == 1) return frames.front();
  const int gap = 2;
  const int cols = static_cast<int>(std::min<std::size_t>(frames.size(), 8));
  const int rows = static_cast<int>((frames.size() + cols - 1) / cols);
  const int fh = frames.front().height(), fw = frames.front().width();
  const int h = rows * fh + (rows - 1) * gap, w = cols * fw + (cols - 1) * gap;
  std::vector<std::uint8_t> px(static_cast<std::size_t>(h) * w * 3, 0);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const int oy = static_cast<int>(i) / cols * (fh + gap);
    const int ox = static_cast<int>(i) % cols * (fw + gap);
    for (int y = 0; y < fh; ++y)
      std::copy_n(frames[i].row(y), static_cast<std::size_t>(fw) * 3,
                  px.begin() + (static_cast<std::ptrdiff_t>(oy + y) * w + ox) * 3);
  }
  return FrameBuffer(h, w, std::move(px));
}

std::vector<std::uint8_t> preview_png(const SampledTensor& t, PreviewStyle style, int cell_h, int cell_w) {
  return encode_png(contact_sheet(render_preview(t, style, cell_h, cell_w)));
}

// Deterministic textured frame: diagonal ramps plus counter-based noise.
FrameBuffer synthetic_frame(int h, int w, std::uint64_t seed, int t) {
  CounterRng rng(seed, static_cast<std::uint32_t>(t));
  std::vector<std::uint8_t> px(static_cast<std::size_t>(h) * w * 3);
  std::uint64_t bits = 0;
  int left = 0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < 3; ++c) {
        if (left == 0) {
          bits = rng.next_u64();
          left = 8;
        }
        const int noise = static_cast<int>(bits & 0x3F);
        bits >>= 8;
        --left;
        px[(static_cast<std::size_t>(y) * w + x) * 3 + c] =
            static_cast<std::uint8_t>((x * (c + 1) + y * (3 - c) + 9 * t + noise) & 0xFF);
      }
  return FrameBuffer(h, w, std::move(px));
}

MediaClip synthetic_clip(int frames, int h, int w, std::uint64_t seed) {
  std::vector<FrameBuffer> out;
  for (int t = 0; t < frames; ++t) out.push_back(synthetic_frame(h, w, seed, t));
  return MediaClip(std::move(out));
}

MediaClip load_video_input(const fs::path& path) {
  if (fs::is_directory(path)) return load_clip(path);
  return MediaClip({load_image(path)});
}

std::string join(const std::vector<std::uint8_t>& v) {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? " " : "") << static_cast<int>(v[i]);
  return s.str();
}

// Audits, prints the per-scale shares and returns the files to write.
std::vector<Output> package(const RunConfig& rc, SampleResult& result, const fs::path& path) {
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  const auto audit = provenance_audit(result.tensor, result.pyramid);
  if (!audit.ok()) {
    throw Error(ErrorCode::InvariantViolation,
                std::to_string(audit.mismatches) + " output pixels differ from their pyramid source");
  }
  const auto& t = result.tensor;
  std::cout << path.filename().string() << ": " << (t.kind == MediaKind::Image ? "image " : "video ") << t.height
            << "x" << t.width << "x" << t.frames << ", " << t.n_scales << " scale(s), spatial "
            << to_string(t.spatial_mask) << ", temporal " << to_string(t.temporal_mask) << "\n";
  if (!t.schedule.empty()) std::cout << "  schedule: " << join(t.schedule) << "\n";
  for (std::size_t s = 0; s < audit.scale_share.size(); ++s) {
    if (audit.scale_share[s] == 0.0) continue;
    std::cout << "  scale " << std::setw(2) << s << "  level " << result.pyramid[s].size().height << "x"
              << result.pyramid[s].size().width << "  share " << std::fixed << std::setprecision(4)
              << audit.scale_share[s] << "\n";
    std::cout.unsetf(std::ios::floatfield);
  }

  std::vector<Output> outputs;
  std::vector<std::uint8_t> preview;
  if (rc.write_preview) preview = preview_png(t, rc.preview, rc.sampler.frag_h, rc.sampler.frag_w);
  SampledTensor stored = t;
  if (!rc.provenance) stored.provenance.reset();
  outputs.push_back({path, serialize_container(stored)});
  if (rc.write_preview) outputs.push_back({with_suffix(path, ".preview.png"), std::move(preview)});
  return outputs;
}

const fs::path& require_input(const RunConfig& rc, const char* what) {
  if (!rc.input) bad(std::string("missing input ") + what);
  return *rc.input;
}

const fs::path& require_output(const RunConfig& rc) {
  if (!rc.output) bad("missing --out");
  return *rc.output;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// nearest-rank
double p95_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(v.size())));
  return v[std::max<std::size_t>(rank, 1) - 1];
}

template <typename F>
double time_ms(F&& f) {
  const auto start = Clock::now();
  f();
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

class ThreadsEnv {
 public:
  ThreadsEnv() {
    if (const char* v = std::getenv("SAMA_THREADS")) saved_ = v;
  }
  ~ThreadsEnv() {
    if (saved_)
      setenv("SAMA_THREADS", saved_->c_str(), 1);
    else
      unsetenv("SAMA_THREADS");
  }
  void set(int n) { setenv("SAMA_THREADS", std::to_string(n).c_str(), 1); }

 private:
  std::optional<std::string> saved_;
};

}  // namespace

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidConfig:
    case ErrorCode::BadArity:
    case ErrorCode::IndivisibleDims:
    case ErrorCode::GridTooFine:
    case ErrorCode::CellSmallerThanFragment:
      return 1;
    case ErrorCode::IoError:
    case ErrorCode::UnsupportedFormat:
    case ErrorCode::CorruptFile:
    case ErrorCode::MixedDimensions:
    case ErrorCode::EmptyClip:
    case ErrorCode::InsufficientFrames:
    case ErrorCode::MissingProvenance:
      return 2;
    default:
      return 3;
  }
}

int cmd_sample_image(const Overrides& flags) {
  const RunConfig rc = resolve(flags, Regime::Image);
  const auto& in = require_input(rc, "image");
  const auto& out = require_output(rc);
  auto result = sample_image(load_image(in), rc.sampler);
  commit(package(rc, result, out));
  return 0;
}

int cmd_sample_video(const Overrides& flags) {
  const RunConfig rc = resolve(flags, Regime::Video);
  const auto& in = require_input(rc, "clip directory or image");
  const auto& out = require_output(rc);
  const MediaClip clip = load_video_input(in);
  const auto& s = rc.sampler;
  if (!rc.infer) {
    auto result = sample_video(clip, s);
    commit(package(rc, result, out));
    return 0;
  }
  const int total = rc.snippets * s.frames_out;
  const auto selected = select_frames(clip, total, s.offset_policy, s.seed);
  const auto snippets = split_snippets(selected, s.frames_out, rc.snippets);
  std::cout << "inference: " << total << " frames from " << clip.size() << " source frames, " << rc.snippets
            << " snippets of " << s.frames_out << "\n";
  std::vector<Output> outputs;
  for (std::size_t i = 0; i < snippets.size(); ++i) {
    SamplerConfig c = s;
    c.seed = s.seed + i;
    auto result = sample_video(snippets[i], c);
    auto files = package(rc, result, with_suffix(out, ".s" + std::to_string(i) + out.extension().string()));
    std::move(files.begin(), files.end(), std::back_inserter(outputs));
  }
  commit(outputs);
  return 0;
}

int cmd_preview(const Overrides& flags) {
  RunConfig rc;
  if (flags.config_path) apply_document(load_document(*flags.config_path), rc);
  if (flags.input) rc.input = *flags.input;
  if (flags.out) rc.output = *flags.out;
  if (flags.frag) std::tie(rc.sampler.frag_h, rc.sampler.frag_w) = parse_dims(*flags.frag, "--frag");
  if (flags.preview) {
    const auto style = parse_preview_style(*flags.preview);
    if (!style) bad("invalid value '" + *flags.preview + "' for --preview");
    rc.preview = *style;
  }
  const auto tensor = read_container(require_input(rc, "container"));
  commit({{require_output(rc), preview_png(tensor, rc.preview, rc.sampler.frag_h, rc.sampler.frag_w)}});
  return 0;
}

int cmd_masks(const Overrides& flags, bool video) {
  const RunConfig rc = resolve(flags, video ? Regime::Video : Regime::Image);
  const auto& dir = require_output(rc);
  const auto plan = plan_scales(rc.sampler, video);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());

  std::vector<Output> outputs;
  for (std::size_t m = 0; m < plan.masks.size(); ++m) {
    const auto& mask = plan.masks[m];
    const auto counts = mask.counts();
    std::size_t total = 0;
    for (auto c : counts) total += c;
    if (total != static_cast<std::size_t>(mask.height) * mask.width)
      throw Error(ErrorCode::InvariantViolation, "mask " + std::to_string(m) + " does not partition the output");
    std::vector<int> frames;
    for (int t = 0; t < plan.frames; ++t)
      if (plan.frame_mask[t] == m) frames.push_back(t);
    std::cout << "mask " << m << " (" << mask.height << "x" << mask.width << ", frames";
    for (int t : frames) std::cout << " " << t;
    std::cout << "):";
    for (std::size_t s = 0; s < counts.size(); ++s) {
      if (counts[s] == 0) continue;
      std::cout << " scale" << s << "=" << counts[s];
      auto gray = mask.indicator(static_cast<int>(s));
      for (auto& g : gray) g = g ? 255 : 0;
      char name[64];
      std::snprintf(name, sizeof name, "mask%02zu_scale%02zu.pgm", m, s);
      outputs.push_back({dir / name, encode_pgm(mask.height, mask.width, gray)});
    }
    std::cout << "\n";
  }
  commit(outputs);
  return 0;
}

int cmd_bench(const Overrides& flags, bool video) {
  const RunConfig rc = resolve(flags, video ? Regime::Video : Regime::Image);
  const auto& s = rc.sampler;
  const int reps = rc.bench_reps;

  // Encoded sources so the decode stage is measured too.
  std::vector<std::vector<std::uint8_t>> encoded;
  if (rc.input) {
    if (video && fs::is_directory(*rc.input)) {
      for (const auto& f : load_clip(*rc.input).frames()) encoded.push_back(encode_png(f));
    } else {
      encoded.push_back(read_file(*rc.input));
    }
  } else {
    const int n = video ? s.frames_out : 1;
    for (int t = 0; t < n; ++t) encoded.push_back(encode_png(synthetic_frame(1080, 1920, s.seed, t)));
  }

  std::map<std::string, std::vector<double>> times;
  const std::vector<std::string> stages = {"decode", "pyramid", "fragments", "compose", "pack"};
  const auto plan = plan_scales(s, video);
  for (int r = 0; r < reps; ++r) {
    std::vector<FrameBuffer> frames;
    times["decode"].push_back(time_ms([&] {
      for (const auto& e : encoded) frames.push_back(decode_image(e));
    }));
    Pyramid pyramid;
    times["pyramid"].push_back(time_ms([&] {
      if (video) {
        const auto selected = select_frames(MediaClip(frames), s.frames_out, s.offset_policy, s.seed);
        pyramid = build_pyramid(selected, s, plan.demand());
      } else {
        pyramid = build_pyramid(frames.front(), s);
      }
    }));
    std::vector<std::vector<Offset>> offsets;
    times["fragments"].push_back(time_ms([&] { offsets = pyramid_offsets(pyramid, s); }));
    SampledTensor tensor;
    times["compose"].push_back(time_ms([&] { tensor = gather_interlaced(pyramid, offsets, plan, s); }));
    tensor.kind = video ? MediaKind::Video : MediaKind::Image;
    tensor.spatial_mask = s.spatial_mask;
    tensor.temporal_mask = video ? s.temporal_mask : TemporalMaskKind::None;
    tensor.seed = s.seed;
    tensor.schedule = plan.schedule;
    times["pack"].push_back(time_ms([&] { (void)serialize_container(tensor); }));
  }

  // Single-scale fragment sampling on the same frames.
  SamplerConfig single = s;
  single.n_scales = 1;
  single.spatial_mask = SpatialMaskKind::None;
  single.temporal_mask = TemporalMaskKind::None;
  const auto single_plan = plan_scales(single, video);
  std::vector<FrameBuffer> frames;
  for (const auto& e : encoded) frames.push_back(decode_image(e));
  const MediaClip selected = video ? select_frames(MediaClip(frames), s.frames_out, s.offset_policy, s.seed)
                                   : MediaClip({frames.front()});
  const auto single_pyramid = build_pyramid(selected, single, single_plan.demand());
  const auto multi_pyramid = build_pyramid(selected, s, plan.demand());
  // Interleaved on prebuilt pyramids so both paths see the same cache state.
  std::vector<double> single_times, sama_fc;
  for (int r = 0; r < reps; ++r) {
    single_times.push_back(time_ms([&] {
      const auto offsets = pyramid_offsets(single_pyramid, single);
      (void)gather_interlaced(single_pyramid, offsets, single_plan, single);
    }));
    sama_fc.push_back(time_ms([&] {
      const auto offsets = pyramid_offsets(multi_pyramid, s);
      (void)gather_interlaced(multi_pyramid, offsets, plan, s);
    }));
  }

  // Pyramid cost against level count on one frame.
  const MediaClip one_frame({selected[0]});
  std::vector<std::pair<int, double>> sweep;
  for (int n : {2, 4, 8, 16}) {
    SamplerConfig c = s;
    c.n_scales = n;
    std::vector<double> t;
    for (int r = 0; r < reps; ++r) t.push_back(time_ms([&] { (void)build_pyramid(one_frame, c); }));
    sweep.emplace_back(n, median_of(t));
  }

  std::cout << "bench: " << (video ? "video" : "image") << " " << frames.front().height() << "x"
            << frames.front().width() << ", " << encoded.size() << " source frame(s), " << reps << " reps, "
            << s.n_scales << " scales, SAMA_THREADS=" << worker_count() << "\n";
  std::cout << std::fixed << std::setprecision(3);
  std::cout << "stage        median_ms     p95_ms\n";
  nlohmann::json report;
  for (const auto& st : stages) {
    const double med = median_of(times[st]), p95 = p95_of(times[st]);
    std::cout << std::left << std::setw(10) << st << std::right << std::setw(12) << med << std::setw(11) << p95
              << "\n";
    report["stages"][st] = {{"median_ms", med}, {"p95_ms", p95}};
  }
  const double multi = median_of(sama_fc), one = median_of(single_times);
  std::cout << "fragments+compose: " << s.n_scales << " scales " << multi << " ms, single scale " << one
            << " ms, ratio " << multi / one << "\n";
  std::cout << "pyramid by levels:";
  bool monotone = true;
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    std::cout << " n=" << sweep[i].first << " " << sweep[i].second << " ms";
    if (i && sweep[i].second <= sweep[i - 1].second) monotone = false;
    report["pyramid_sweep_ms"][std::to_string(sweep[i].first)] = sweep[i].second;
  }
  std::cout << (monotone ? "  (increasing)" : "  (not increasing)") << "\n";
  report["fragments_compose_ms"] = {{"multi_scale", multi}, {"single_scale", one}, {"ratio", multi / one}};
  report["reps"] = reps;
  report["pyramid_increasing"] = monotone;
  if (rc.output) {
    const auto text = report.dump(2) + "\n";
    commit({{*rc.output, std::vector<std::uint8_t>(text.begin(), text.end())}});
  }
  return 0;
}

int cmd_attn_check(std::uint64_t seed, int instances) {
  if (instances < 1) bad("--instances must be >= 1");
  const auto results = head::run_head_properties(seed, instances);
  bool all = true;
  std::cout << std::left << std::setw(44) << "property" << std::right << std::setw(10) << "instances" << std::setw(13)
            << "worst" << std::setw(13) << "tolerance" << "  result\n";
  for (const auto& r : results) {
    std::cout << std::left << std::setw(44) << r.name << std::right << std::setw(10) << r.instances
              << std::scientific << std::setprecision(3) << std::setw(13) << r.worst << std::setw(13)
              << r.tolerance << "  " << (r.passed ? "PASS" : "FAIL") << "\n";
    std::cout.unsetf(std::ios::floatfield);
    all = all && r.passed;
  }
  std::cout << (all ? "all properties hold\n" : "property failures\n");
  return all ? 0 : 3;
}

int cmd_verify(const Overrides& flags, const VerifyOptions& options) {
  if (options.seed_replay < 2) bad("--seed-replay needs at least 2 runs");
  SamplerConfig image_cfg = SamplerConfig::image_defaults();
  SamplerConfig video_cfg = SamplerConfig::video_defaults();
  for (SamplerConfig* c : {&image_cfg, &video_cfg}) {
    if (flags.seed) c->seed = *flags.seed;
    if (flags.offset) {
      const auto p = parse_offset_policy(*flags.offset);
      if (!p) bad("invalid value '" + *flags.offset + "' for --offset");
      c->offset_policy = *p;
    }
  }
  const FrameBuffer image = flags.input ? load_image(*flags.input) : synthetic_frame(720, 1280, image_cfg.seed, 0);
  const MediaClip clip = synthetic_clip(40, 240, 320, video_cfg.seed);

  int failures = 0;
  const auto report = [&](const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << "  " << detail << "\n";
    if (!ok) ++failures;
  };
  const auto guarded = [&](const std::string& name, auto&& check) {
    try {
      check();
    } catch (const Error& e) {
      report(name, false, e.what());
    }
  };

  guarded("provenance-audit-image", [&] {
    auto r = sample_image(image, image_cfg);
    if (options.inject_fault) {
      const std::size_t at = r.tensor.pixel_index(0, r.tensor.height / 2, r.tensor.width / 3) * 3;
      r.tensor.data[at] ^= 0x5A;
    }
    const auto a = provenance_audit(r.tensor, r.pyramid);
    std::string detail = std::to_string(a.pixels_checked) + " pixels, " + std::to_string(a.mismatches) + " mismatches";
    if (a.first_mismatch) {
      const auto& p = *a.first_mismatch;
      detail += ", first at frame " + std::to_string(p[0]) + " (" + std::to_string(p[1]) + ", " +
                std::to_string(p[2]) + ")";
    }
    report("provenance-audit-image", a.ok(), detail);
  });

  guarded("provenance-audit-video", [&] {
    std::size_t pixels = 0, mismatches = 0;
    for (auto kind : {TemporalMaskKind::Progressive, TemporalMaskKind::Choppy, TemporalMaskKind::Mixed}) {
      SamplerConfig c = video_cfg;
      c.temporal_mask = kind;
      c.n_scales = required_scales(kind, c.frames_out);
      const auto r = sample_video(clip, c);
      const auto a = provenance_audit(r.tensor, r.pyramid);
      pixels += a.pixels_checked;
      mismatches += a.mismatches;
    }
    report("provenance-audit-video", mismatches == 0,
           "progressive/choppy/mixed, " + std::to_string(pixels) + " pixels, " + std::to_string(mismatches) +
               " mismatches");
  });

  guarded("mask-partition", [&] {
    int configs = 0;
    std::string broken;
    const auto check = [&](const SamplerConfig& c, bool video) {
      ++configs;
      const auto plan = plan_scales(c, video);
      if (static_cast<int>(plan.frame_mask.size()) != plan.frames) broken = "frame coverage";
      for (const auto& m : plan.masks) {
        std::size_t total = 0;
        for (auto n : m.counts()) total += n;
        for (auto id : m.ids)
          if (id >= plan.n_scales) broken = "scale id out of range";
        if (total != m.ids.size()) broken = "counts do not sum to the pixel count";
      }
    };
    for (auto sp : {SpatialMaskKind::Window, SpatialMaskKind::Patch})
      for (int n : {2, 3, 4}) {
        SamplerConfig c = image_cfg;
        c.spatial_mask = sp;
        c.n_scales = n;
        check(c, false);
      }
    for (auto tm : {TemporalMaskKind::Progressive, TemporalMaskKind::Choppy, TemporalMaskKind::Mixed})
      for (auto sp : {SpatialMaskKind::None, SpatialMaskKind::Window}) {
        SamplerConfig c = video_cfg;
        c.temporal_mask = tm;
        c.spatial_mask = sp;
        c.n_scales = required_scales(tm, c.frames_out);
        check(c, true);
      }
    report("mask-partition", broken.empty(),
           std::to_string(configs) + " configurations" + (broken.empty() ? "" : ": " + broken));
  });

  guarded("determinism", [&] {
    ThreadsEnv env;
    std::vector<std::uint8_t> first_image, first_video;
    bool same = true;
    for (int i = 0; i < options.seed_replay; ++i) {
      env.set(i % 2 == 0 ? 1 : 4);
      auto ic = image_cfg;
      ic.offset_policy = OffsetPolicy::Random;
      auto vc = video_cfg;
      vc.offset_policy = OffsetPolicy::Random;
      const auto a = serialize_container(sample_image(image, ic).tensor);
      const auto b = serialize_container(sample_video(clip, vc).tensor);
      if (i == 0) {
        first_image = a;
        first_video = b;
      } else {
        same = same && a == first_image && b == first_video;
      }
    }
    report("determinism", same,
           std::to_string(options.seed_replay) + " replays, SAMA_THREADS 1/4, image+video containers " +
               (same ? "byte-identical" : "differ"));
  });

  guarded("container-round-trip", [&] {
    const auto t = sample_video(clip, video_cfg).tensor;
    const bool ok = parse_container(serialize_container(t)) == t;
    report("container-round-trip", ok, ok ? "video container parses back identically" : "round trip differs");
  });

  guarded("scale-head", [&] {
    const auto results = head::run_head_properties(flags.seed.value_or(0), 100);
    std::string failed;
    for (const auto& r : results)
      if (!r.passed) failed += " " + r.name;
    report("scale-head", failed.empty(),
           std::to_string(results.size()) + " properties x 100 instances" +
               (failed.empty() ? "" : ", failing:" + failed));
  });

  std::cout << (failures == 0 ? "verify: all checks passed\n"
                              : "verify: " + std::to_string(failures) + " check(s) failed\n");
  return failures == 0 ? 0 : 3;
}

}  // namespace sama::cli
