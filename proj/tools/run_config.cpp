#include "run_config.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include "sama/error.hpp"

namespace sama::cli {
namespace {

using nlohmann::json;

enum class Kind { String, Bool, Int, Seed, Spatial, Temporal, Offset, Preview };

struct Field {
  const char* key;
  Kind kind;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      {"input", Kind::String},
      {"output", Kind::String},
      {"grid_rows", Kind::Int, 1, 1024},
      {"grid_cols", Kind::Int, 1, 1024},
      {"frag_h", Kind::Int, 1, 4096},
      {"frag_w", Kind::Int, 1, 4096},
      {"frames_out", Kind::Int, 1, 65535},
      {"n_scales", Kind::Int, 1, 255},
      {"spatial_mask", Kind::Spatial},
      {"temporal_mask", Kind::Temporal},
      {"offset_policy", Kind::Offset},
      {"seed", Kind::Seed},
      {"aligned_offsets", Kind::Bool},
      {"preview", Kind::Preview},
      {"write_preview", Kind::Bool},
      {"provenance", Kind::Bool},
      {"infer", Kind::Bool},
      {"snippets", Kind::Int, 1, 64},
      {"bench_reps", Kind::Int, 1, 100000},
  };
  return table;
}

std::string kind_name(const Field& f) {
  switch (f.kind) {
    case Kind::String: return "string";
    case Kind::Bool: return "boolean";
    case Kind::Int: return "integer in [" + std::to_string(f.lo) + ", " + std::to_string(f.hi) + "]";
    case Kind::Seed: return "non-negative 64-bit integer";
    case Kind::Spatial: return "one of none|window|patch";
    case Kind::Temporal: return "one of none|progressive|choppy|mixed";
    case Kind::Offset: return "one of random|center";
    case Kind::Preview: return "one of plain|tinted|bordered";
  }
  return "?";
}

bool conforms(const Field& f, const json& v) {
  switch (f.kind) {
    case Kind::String: return v.is_string();
    case Kind::Bool: return v.is_boolean();
    case Kind::Int: {
      if (!v.is_number_integer()) return false;
      const auto n = v.get<std::int64_t>();
      return n >= f.lo && n <= f.hi;
    }
    case Kind::Seed: return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
    case Kind::Spatial: return v.is_string() && parse_spatial_mask(v.get<std::string>()).has_value();
    case Kind::Temporal: return v.is_string() && parse_temporal_mask(v.get<std::string>()).has_value();
    case Kind::Offset: return v.is_string() && parse_offset_policy(v.get<std::string>()).has_value();
    case Kind::Preview: return v.is_string() && parse_preview_style(v.get<std::string>()).has_value();
  }
  return false;
}

[[noreturn]] void bad(const std::string& message) { throw Error(ErrorCode::InvalidConfig, message); }

template <typename T, typename Parse>
T parse_enum(const std::string& text, Parse parse, const char* flag) {
  const auto v = parse(text);
  if (!v) bad(std::string("invalid value '") + text + "' for " + flag);
  return *v;
}

}  // namespace

const std::vector<std::pair<std::string, std::string>>& config_schema() {
  static const auto schema = [] {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& f : fields()) out.emplace_back(f.key, kind_name(f));
    return out;
  }();
  return schema;
}

std::vector<std::string> schema_errors(const json& doc) {
  if (!doc.is_object()) return {"config must be a JSON object"};
  std::vector<std::string> errors;
  for (const auto& [key, value] : doc.items()) {
    const Field* match = nullptr;
    for (const auto& f : fields()) {
      if (key == f.key) match = &f;
    }
    if (!match) {
      errors.push_back("unknown key '" + key + "'");
    } else if (!conforms(*match, value)) {
      errors.push_back("'" + key + "' must be " + kind_name(*match) + ", got " + value.dump());
    }
  }
  return errors;
}

bool apply_document(const json& doc, RunConfig& rc) {
  auto& s = rc.sampler;
  const auto int_at = [&](const char* key, int& target) {
    if (doc.contains(key)) target = doc.at(key).get<int>();
  };
  if (doc.contains("input")) rc.input = doc.at("input").get<std::string>();
  if (doc.contains("output")) rc.output = doc.at("output").get<std::string>();
  int_at("grid_rows", s.grid_rows);
  int_at("grid_cols", s.grid_cols);
  int_at("frag_h", s.frag_h);
  int_at("frag_w", s.frag_w);
  int_at("frames_out", s.frames_out);
  int_at("n_scales", s.n_scales);
  int_at("snippets", rc.snippets);
  int_at("bench_reps", rc.bench_reps);
  if (doc.contains("spatial_mask")) s.spatial_mask = *parse_spatial_mask(doc.at("spatial_mask").get<std::string>());
  if (doc.contains("temporal_mask"))
    s.temporal_mask = *parse_temporal_mask(doc.at("temporal_mask").get<std::string>());
  if (doc.contains("offset_policy"))
    s.offset_policy = *parse_offset_policy(doc.at("offset_policy").get<std::string>());
  if (doc.contains("seed")) s.seed = doc.at("seed").get<std::uint64_t>();
  if (doc.contains("aligned_offsets")) s.aligned_offsets = doc.at("aligned_offsets").get<bool>();
  if (doc.contains("preview")) {
    rc.preview = *parse_preview_style(doc.at("preview").get<std::string>());
    rc.write_preview = true;
  }
  if (doc.contains("write_preview")) rc.write_preview = doc.at("write_preview").get<bool>();
  if (doc.contains("provenance")) rc.provenance = doc.at("provenance").get<bool>();
  if (doc.contains("infer")) rc.infer = doc.at("infer").get<bool>();
  return doc.contains("n_scales");
}

std::pair<int, int> parse_dims(const std::string& text, const std::string& what) {
  static const std::regex pattern(R"(^([0-9]{1,5})[xX]([0-9]{1,5})$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) bad(what + " must look like RxC, got '" + text + "'");
  const int a = std::stoi(m[1].str());
  const int b = std::stoi(m[2].str());
  if (a < 1 || b < 1) bad(what + " dimensions must be positive, got '" + text + "'");
  return {a, b};
}

int default_scales(const SamplerConfig& c, Regime regime) noexcept {
  if (regime == Regime::Video && c.temporal_mask != TemporalMaskKind::None)
    return required_scales(c.temporal_mask, c.frames_out);
  return c.spatial_mask == SpatialMaskKind::None ? 1 : 2;
}

json load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read config file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    bad("config file " + path + " is not valid JSON: " + e.what());
  }
  const auto errors = schema_errors(doc);
  if (!errors.empty()) {
    std::ostringstream msg;
    msg << "config file " << path << ":";
    for (const auto& e : errors) msg << "\n  " << e;
    bad(msg.str());
  }
  return doc;
}

RunConfig resolve(const Overrides& flags, Regime regime) {
  RunConfig rc;
  rc.sampler = regime == Regime::Image ? SamplerConfig::image_defaults() : SamplerConfig::video_defaults();
  bool scales_set = false;

  if (flags.config_path) {
    const json doc = load_document(*flags.config_path);
    scales_set = apply_document(doc, rc);
  }

  auto& s = rc.sampler;
  if (flags.input) rc.input = *flags.input;
  if (flags.out) rc.output = *flags.out;
  if (flags.grid) std::tie(s.grid_rows, s.grid_cols) = parse_dims(*flags.grid, "--grid");
  if (flags.frag) std::tie(s.frag_h, s.frag_w) = parse_dims(*flags.frag, "--frag");
  if (flags.frames) s.frames_out = *flags.frames;
  if (flags.scales) {
    s.n_scales = *flags.scales;
    scales_set = true;
  }
  if (flags.spatial_mask)
    s.spatial_mask = parse_enum<SpatialMaskKind>(*flags.spatial_mask, parse_spatial_mask, "--spatial-mask");
  if (flags.temporal_mask)
    s.temporal_mask = parse_enum<TemporalMaskKind>(*flags.temporal_mask, parse_temporal_mask, "--temporal-mask");
  if (flags.offset) s.offset_policy = parse_enum<OffsetPolicy>(*flags.offset, parse_offset_policy, "--offset");
  if (flags.seed) s.seed = *flags.seed;
  if (flags.aligned) s.aligned_offsets = true;
  if (flags.preview) {
    rc.preview = parse_enum<PreviewStyle>(*flags.preview, parse_preview_style, "--preview");
    rc.write_preview = true;
  }
  if (flags.reps) {
    if (*flags.reps < 1) bad("--reps must be >= 1");
    rc.bench_reps = *flags.reps;
  }
  if (flags.infer) rc.infer = true;
  if (flags.no_provenance) rc.provenance = false;

  if (s.frames_out < 1 || s.frames_out > 65535) bad("frames must be in [1, 65535]");
  if (s.grid_rows > 1024 || s.grid_cols > 1024 || s.frag_h > 4096 || s.frag_w > 4096)
    bad("grid or fragment too large");
  if (!scales_set) s.n_scales = default_scales(s, regime);
  validate(s, regime == Regime::Video);
  return rc;
}

}  // namespace sama::cli
