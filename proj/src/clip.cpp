#include "sama/clip.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <string>

#include "sama/error.hpp"
#include "sama/image_io.hpp"
#include "sama/parallel.hpp"
#include "sama/random.hpp"

namespace sama {

MediaClip load_clip(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) throw Error(ErrorCode::IoError, dir.string() + " is not a directory");

  static const std::regex kFrameName(R"(frame_(\d{6})\.(png|ppm))");
  std::map<int, std::filesystem::path> by_index;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto name = entry.path().filename().string();
    std::smatch m;
    if (!std::regex_match(name, m, kFrameName)) continue;
    const int index = std::stoi(m[1].str());
    if (!by_index.emplace(index, entry.path()).second) {
      throw Error(ErrorCode::CorruptFile, "duplicate frame index " + m[1].str() + " in " + dir.string());
    }
  }
  if (by_index.empty()) throw Error(ErrorCode::EmptyClip, "no frame_NNNNNN.(png|ppm) files in " + dir.string());

  std::vector<std::filesystem::path> paths;
  paths.reserve(by_index.size());
  for (auto& [index, path] : by_index) paths.push_back(std::move(path));

  std::vector<std::optional<FrameBuffer>> decoded(paths.size());
  parallel_for(paths.size(), [&](std::size_t i) { decoded[i] = load_image(paths[i]); });

  std::vector<FrameBuffer> frames;
  frames.reserve(decoded.size());
  for (auto& f : decoded) frames.push_back(std::move(*f));
  return MediaClip(std::move(frames));
}

std::vector<std::size_t> select_frame_indices(std::size_t clip_len, int count, OffsetPolicy policy,
                                              std::uint64_t seed) {
  if (clip_len == 0) throw Error(ErrorCode::EmptyClip, "cannot select frames from an empty clip");
  if (count < 1) throw Error(ErrorCode::InvalidConfig, "frame count must be >= 1");
  const auto n = static_cast<std::size_t>(count);
  std::vector<std::size_t> indices(n);
  if (clip_len < n) {
    for (std::size_t i = 0; i < n; ++i) indices[i] = i % clip_len;
    return indices;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i * clip_len / n;
    const std::size_t hi = (i + 1) * clip_len / n;
    if (policy == OffsetPolicy::Center) {
      indices[i] = (2 * i + 1) * clip_len / (2 * n);
    } else {
      const auto bits = random_bits(seed, RandomStream::FrameJitter, static_cast<std::uint32_t>(i), 0, 0);
      indices[i] = lo + bounded(bits, hi - lo);
    }
  }
  return indices;
}

MediaClip select_frames(const MediaClip& clip, int count, OffsetPolicy policy, std::uint64_t seed) {
  const auto indices = select_frame_indices(clip.size(), count, policy, seed);
  std::vector<FrameBuffer> frames;
  frames.reserve(indices.size());
  for (auto i : indices) frames.push_back(clip[i]);
  return MediaClip(std::move(frames), clip.nominal_fps());
}

std::vector<MediaClip> split_snippets(const MediaClip& clip, int snippet_len, int n_snippets) {
  if (snippet_len < 1 || n_snippets < 1) throw Error(ErrorCode::InvalidConfig, "snippet length and count must be >= 1");
  const auto need = static_cast<std::size_t>(snippet_len) * n_snippets;
  if (clip.size() < need) {
    throw Error(ErrorCode::InsufficientFrames, "need " + std::to_string(need) + " frames for " +
                                                   std::to_string(n_snippets) + " snippets, clip has " +
                                                   std::to_string(clip.size()));
  }
  std::vector<MediaClip> out;
  out.reserve(n_snippets);
  for (int s = 0; s < n_snippets; ++s) {
    const auto begin = clip.frames().begin() + static_cast<std::ptrdiff_t>(s) * snippet_len;
    out.emplace_back(std::vector<FrameBuffer>(begin, begin + snippet_len), clip.nominal_fps());
  }
  return out;
}

}  // namespace sama
