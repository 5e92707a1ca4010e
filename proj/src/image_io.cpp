#include "sama/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <csetjmp>
#include <cstring>
#include <fstream>
#include <string>
#include <system_error>

#include "sama/error.hpp"

namespace sama {

namespace {

constexpr std::array<std::uint8_t, 8> kPngSignature = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

bool has_png_signature(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= kPngSignature.size() &&
         std::equal(kPngSignature.begin(), kPngSignature.end(), bytes.begin());
}

// Netpbm header tokenizer: whitespace separated, '#' comments to end of line.
class PnmHeaderReader {
 public:
  explicit PnmHeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  long next_int() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw Error(ErrorCode::CorruptFile, "malformed PPM header");
    }
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_++] - '0');
      if (value > (1L << 30)) throw Error(ErrorCode::CorruptFile, "PPM header value out of range");
    }
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_start() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw Error(ErrorCode::CorruptFile, "PPM header not terminated by whitespace");
    }
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 2;
};

struct PngReadSource {
  std::span<const std::uint8_t> bytes;
  std::size_t pos = 0;
};

void png_read_from_span(png_structp png, png_bytep out, png_size_t length) {
  auto* src = static_cast<PngReadSource*>(png_get_io_ptr(png));
  if (src->bytes.size() - src->pos < length) png_error(png, "unexpected end of PNG data");
  std::memcpy(out, src->bytes.data() + src->pos, length);
  src->pos += length;
}

void png_write_to_vector(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

void png_flush_noop(png_structp) {}

void png_warning_silent(png_structp, png_const_charp) {}

struct PngDecodeState {
  PngReadSource source;
  png_uint_32 width = 0;
  png_uint_32 height = 0;
  std::vector<std::uint8_t> rgb;
  std::vector<png_bytep> rows;
  char message[128] = {};
};

void png_error_to_state(png_structp png, png_const_charp msg) {
  auto* state = static_cast<PngDecodeState*>(png_get_error_ptr(png));
  std::strncpy(state->message, msg, sizeof(state->message) - 1);
  png_longjmp(png, 1);
}

// All C++ objects touched after setjmp live in `state`, owned by the caller,
// so a longjmp out of libpng skips no destructors.
bool png_decode_into(PngDecodeState& state) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &state, png_error_to_state, png_warning_silent);
  if (png == nullptr) return false;
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }
  png_set_read_fn(png, &state.source, png_read_from_span);
  png_read_info(png, info);

  const int bit_depth = png_get_bit_depth(png, info);
  const int color_type = png_get_color_type(png, info);
  if (bit_depth == 16) png_set_strip_16(png);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_gray_to_rgb(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if ((color_type & PNG_COLOR_MASK_ALPHA) || png_get_valid(png, info, PNG_INFO_tRNS)) png_set_strip_alpha(png);
  png_set_interlace_handling(png);
  png_read_update_info(png, info);

  state.width = png_get_image_width(png, info);
  state.height = png_get_image_height(png, info);
  if (png_get_rowbytes(png, info) != static_cast<png_size_t>(state.width) * 3) {
    png_error(png, "unexpected row layout after transforms");
  }
  state.rgb.resize(static_cast<std::size_t>(state.width) * state.height * 3);
  state.rows.resize(state.height);
  for (png_uint_32 y = 0; y < state.height; ++y) {
    state.rows[y] = state.rgb.data() + static_cast<std::size_t>(y) * state.width * 3;
  }
  png_read_image(png, state.rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return true;
}

struct PngEncodeState {
  std::vector<std::uint8_t> out;
  std::vector<png_bytep> rows;
  char message[128] = {};
};

void png_error_to_encode_state(png_structp png, png_const_charp msg) {
  auto* state = static_cast<PngEncodeState*>(png_get_error_ptr(png));
  std::strncpy(state->message, msg, sizeof(state->message) - 1);
  png_longjmp(png, 1);
}

bool png_encode_into(PngEncodeState& state, const FrameBuffer& frame) {
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, &state, png_error_to_encode_state, png_warning_silent);
  if (png == nullptr) return false;
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return false;
  }
  png_set_write_fn(png, &state.out, png_write_to_vector, png_flush_noop);
  png_set_IHDR(png, info, frame.width(), frame.height(), 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, state.rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

}  // namespace

FrameBuffer decode_ppm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') throw Error(ErrorCode::CorruptFile, "bad PPM magic");
  if (bytes[1] != '6') {
    throw Error(ErrorCode::UnsupportedFormat, std::string("netpbm variant P") + static_cast<char>(bytes[1]));
  }
  PnmHeaderReader header(bytes);
  const long width = header.next_int();
  const long height = header.next_int();
  const long maxval = header.next_int();
  if (width < 1 || height < 1) throw Error(ErrorCode::CorruptFile, "PPM dimensions must be positive");
  if (maxval != 255) throw Error(ErrorCode::UnsupportedFormat, "PPM maxval " + std::to_string(maxval));
  const std::size_t start = header.raster_start();
  const auto need = static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3;
  if (bytes.size() < start || bytes.size() - start < need) {
    throw Error(ErrorCode::CorruptFile, "PPM payload truncated: need " + std::to_string(need) + " bytes, have " +
                                            std::to_string(bytes.size() > start ? bytes.size() - start : 0));
  }
  std::vector<std::uint8_t> px(bytes.begin() + start, bytes.begin() + start + need);
  return FrameBuffer(static_cast<int>(height), static_cast<int>(width), std::move(px));
}

FrameBuffer decode_png(std::span<const std::uint8_t> bytes) {
  if (!has_png_signature(bytes)) throw Error(ErrorCode::CorruptFile, "bad PNG signature");
  PngDecodeState state;
  state.source.bytes = bytes;
  if (!png_decode_into(state)) {
    throw Error(ErrorCode::CorruptFile, std::string("PNG decode failed: ") + state.message);
  }
  if (state.width == 0 || state.height == 0 || state.width > (1u << 30) / 3 || state.height > (1u << 30)) {
    throw Error(ErrorCode::CorruptFile, "PNG dimensions out of range");
  }
  return FrameBuffer(static_cast<int>(state.height), static_cast<int>(state.width), std::move(state.rgb));
}

FrameBuffer decode_image(std::span<const std::uint8_t> bytes) {
  if (has_png_signature(bytes)) return decode_png(bytes);
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] >= '1' && bytes[1] <= '7') return decode_ppm(bytes);
  throw Error(ErrorCode::UnsupportedFormat, "neither PNG nor PPM");
}

FrameBuffer load_image(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".png" && !has_png_signature(bytes)) throw Error(ErrorCode::CorruptFile, "bad PNG signature");
  if (ext == ".ppm" && (bytes.size() < 2 || bytes[0] != 'P')) throw Error(ErrorCode::CorruptFile, "bad PPM magic");
  return decode_image(bytes);
}

std::vector<std::uint8_t> encode_ppm(const FrameBuffer& frame) {
  const std::string header =
      "P6\n" + std::to_string(frame.width()) + " " + std::to_string(frame.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  const auto px = frame.bytes();
  out.insert(out.end(), px.begin(), px.end());
  return out;
}

std::vector<std::uint8_t> encode_pgm(int height, int width, std::span<const std::uint8_t> gray) {
  if (gray.size() != static_cast<std::size_t>(height) * width) {
    throw Error(ErrorCode::DimMismatch, "graymap payload does not match dimensions");
  }
  const std::string header = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), gray.begin(), gray.end());
  return out;
}

std::vector<std::uint8_t> encode_png(const FrameBuffer& frame) {
  PngEncodeState state;
  state.rows.resize(frame.height());
  for (int y = 0; y < frame.height(); ++y) state.rows[y] = const_cast<png_bytep>(frame.row(y));
  if (!png_encode_into(state, frame)) {
    throw Error(ErrorCode::IoError, std::string("PNG encode failed: ") + state.message);
  }
  return std::move(state.out);
}

void save_image(const FrameBuffer& frame, const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  write_file_atomic(path, ext == ".png" ? encode_png(frame) : encode_ppm(frame));
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::IoError, "read failed for " + path.string());
  return bytes;
}

void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot create " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error(ErrorCode::IoError, "write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw Error(ErrorCode::IoError, "cannot rename onto " + path.string() + ": " + ec.message());
  }
}

}  // namespace sama
