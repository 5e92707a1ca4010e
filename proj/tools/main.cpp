#include <CLI11.hpp>

#include <iostream>
#include <new>

#include "commands.hpp"

using namespace sama;
using namespace sama::cli;

namespace {

void add_io(CLI::App* sub, Overrides& f, const char* input_help) {
  sub->add_option("--config", f.config_path, "JSON run configuration; flags override its values");
  sub->add_option("input", f.input, input_help);
  sub->add_option("--out", f.out, "output path");
}

void add_sampler(CLI::App* sub, Overrides& f) {
  sub->add_option("--grid", f.grid, "fragment grid, RxC");
  sub->add_option("--frag", f.frag, "fragment size, HxW");
  sub->add_option("--frames", f.frames, "output frames (video)");
  sub->add_option("--scales", f.scales, "pyramid levels including the raw one");
  sub->add_option("--spatial-mask", f.spatial_mask, "none, window or patch");
  sub->add_option("--temporal-mask", f.temporal_mask, "none, progressive, choppy or mixed");
  sub->add_option("--offset", f.offset, "random or center");
  sub->add_option("--seed", f.seed, "64-bit seed");
  sub->add_flag("--aligned-offsets", f.aligned, "same cell-relative offset at every level");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-scale fragment sampler for image and video quality assessment"};
  app.require_subcommand(1, 1);
  Overrides f;
  bool masks_video = false, bench_video = false;
  std::uint64_t attn_seed = 0;
  int attn_instances = 100;
  VerifyOptions verify;

  auto* image = app.add_subcommand("sample-image", "sample one image into a container");
  add_io(image, f, "image file (PNG or PPM)");
  add_sampler(image, f);
  image->add_option("--preview", f.preview, "also write <out>.preview.png: plain, tinted or bordered");
  image->add_flag("--no-provenance", f.no_provenance, "omit per-pixel provenance from the container");

  auto* video = app.add_subcommand("sample-video", "sample a frame directory into a container");
  add_io(video, f, "directory of frame_NNNNNN.png|ppm, or a single image");
  add_sampler(video, f);
  video->add_option("--preview", f.preview, "also write <out>.preview.png: plain, tinted or bordered");
  video->add_flag("--no-provenance", f.no_provenance, "omit per-pixel provenance from the container");
  video->add_flag("--infer", f.infer, "4 snippets from 4x the frame count, one container each");

  auto* preview = app.add_subcommand("preview", "render a container as a PNG");
  add_io(preview, f, "container file");
  preview->add_option("--preview", f.preview, "plain, tinted (default) or bordered");
  preview->add_option("--frag", f.frag, "cell size for the bordered style, HxW");

  auto* masks = app.add_subcommand("masks", "dump per-scale mask indicators as PGM into --out DIR");
  masks->add_option("--config", f.config_path, "JSON run configuration");
  masks->add_option("--out", f.out, "output directory");
  add_sampler(masks, f);
  masks->add_flag("--video", masks_video, "video regime (temporal masks)");

  auto* bench = app.add_subcommand("bench", "per-stage timing on synthetic 1080p or a given input");
  add_io(bench, f, "optional image, or frame directory with --video");
  add_sampler(bench, f);
  bench->add_option("--reps", f.reps, "repetitions (default 20)");
  bench->add_flag("--video", bench_video, "video regime");

  auto* attn = app.add_subcommand("attn-check", "scale-head property suite");
  attn->add_option("--seed", attn_seed, "seed for the random instances");
  attn->add_option("--instances", attn_instances, "instances per property");

  auto* check = app.add_subcommand("verify", "audits, mask partitions, replays and head properties");
  check->add_option("input", f.input, "optional image for the image audit");
  check->add_option("--seed", f.seed, "sampler and property seed");
  check->add_option("--offset", f.offset, "random or center");
  check->add_flag("--inject-fault", verify.inject_fault, "corrupt one gathered byte before the audit");
  check->add_option("--seed-replay", verify.seed_replay, "determinism replays (>= 2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*image) return cmd_sample_image(f);
    if (*video) return cmd_sample_video(f);
    if (*preview) return cmd_preview(f);
    if (*masks) return cmd_masks(f, masks_video);
    if (*bench) return cmd_bench(f, bench_video);
    if (*attn) return cmd_attn_check(attn_seed, attn_instances);
    if (*check) return cmd_verify(f, verify);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
