#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "sama/config.hpp"
#include "sama/frame.hpp"

namespace sama {

/// Loads `frame_NNNNNN.png|ppm` files from `dir` in index order. Other files
/// are ignored. Throws EmptyClip when no frame matches, MixedDimensions when
/// frame sizes differ, IoError when `dir` is not a directory.
MediaClip load_clip(const std::filesystem::path& dir);

/// Source indices picked by select_frames. The clip is split into `count`
/// equal temporal bins [floor(i*N/count), floor((i+1)*N/count)); the center
/// policy takes floor((i + 1/2) * N / count), the random policy a uniform
/// index inside the bin keyed by (seed, i). Clips shorter than `count` repeat
/// cyclically: index i maps to i mod N.
std::vector<std::size_t> select_frame_indices(std::size_t clip_len, int count, OffsetPolicy policy,
                                              std::uint64_t seed);

MediaClip select_frames(const MediaClip& clip, int count, OffsetPolicy policy, std::uint64_t seed);

/// `n_snippets` contiguous, non-overlapping runs of `snippet_len` frames from
/// the head of the clip. Throws InsufficientFrames when the clip is shorter
/// than snippet_len * n_snippets.
std::vector<MediaClip> split_snippets(const MediaClip& clip, int snippet_len, int n_snippets);

}  // namespace sama
