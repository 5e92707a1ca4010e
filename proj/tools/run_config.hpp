#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sama/config.hpp"
#include "sama/preview.hpp"

namespace sama::cli {

enum class Regime { Image, Video };

/// Everything a subcommand needs: the sampler settings plus plumbing.
struct RunConfig {
  SamplerConfig sampler;
  std::optional<std::filesystem::path> input;
  std::optional<std::filesystem::path> output;
  PreviewStyle preview = PreviewStyle::Tinted;
  bool write_preview = false;
  bool provenance = true;
  bool infer = false;
  int snippets = 4;
  int bench_reps = 20;
};

/// Values given on the command line. Unset fields leave the file/default value.
struct Overrides {
  std::optional<std::string> config_path;
  std::optional<std::string> input;
  std::optional<std::string> out;
  std::optional<std::string> grid;
  std::optional<std::string> frag;
  std::optional<int> frames;
  std::optional<int> scales;
  std::optional<std::string> spatial_mask;
  std::optional<std::string> temporal_mask;
  std::optional<std::string> offset;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> preview;
  std::optional<int> reps;
  bool infer = false;
  bool aligned = false;
  bool no_provenance = false;
};

/// Keys a config file may contain, with their expected JSON types.
const std::vector<std::pair<std::string, std::string>>& config_schema();

/// Checks `doc` against the schema: object, known keys, types and ranges.
/// Returns every problem found; empty means valid.
std::vector<std::string> schema_errors(const nlohmann::json& doc);

/// Reads and schema-checks a config file. Throws IoError or InvalidConfig.
nlohmann::json load_document(const std::string& path);

/// Applies a validated document on top of `config`. Returns whether n_scales was set.
bool apply_document(const nlohmann::json& doc, RunConfig& config);

/// Defaults for the regime, then the config file, then the flags. When no
/// layer sets n_scales it follows from the masks. The sampler settings are
/// validated. Throws Error(InvalidConfig) for bad values and IoError when the
/// config file cannot be read.
RunConfig resolve(const Overrides& flags, Regime regime);

/// "7x7" -> {7, 7}. Throws Error(InvalidConfig).
std::pair<int, int> parse_dims(const std::string& text, const std::string& what);

/// Scale count implied by the masks when none is given explicitly.
int default_scales(const SamplerConfig& config, Regime regime) noexcept;

}  // namespace sama::cli
