#pragma once

#include <cstdint>

#include "run_config.hpp"
#include "sama/error.hpp"

namespace sama::cli {

/// 1 configuration, 2 input/output, 3 invariant violation.
int exit_code_for(ErrorCode code) noexcept;

int cmd_sample_image(const Overrides& flags);
int cmd_sample_video(const Overrides& flags);
int cmd_preview(const Overrides& flags);
int cmd_masks(const Overrides& flags, bool video);
int cmd_bench(const Overrides& flags, bool video);
int cmd_attn_check(std::uint64_t seed, int instances);

struct VerifyOptions {
  bool inject_fault = false;
  int seed_replay = 3;
};
int cmd_verify(const Overrides& flags, const VerifyOptions& options);

}  // namespace sama::cli
