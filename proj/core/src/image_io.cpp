#include "sphconv/image_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "sphconv/bytes.hpp"

namespace sphconv {

namespace {

unsigned char quantize(float v) {
  const float c = std::clamp(v, 0.0f, 1.0f);
  return static_cast<unsigned char>(std::lround(c * 255.0f));
}

void append_header(std::vector<unsigned char>& out, const char* magic,
                   std::uint32_t w, std::uint32_t h) {
  char buf[64];
  const int n = std::snprintf(buf, sizeof(buf), "%s\n%u %u\n255\n", magic, w, h);
  out.insert(out.end(), buf, buf + n);
}

// Netpbm token scanner: skips whitespace and '#' comments.
struct PnmReader {
  const std::vector<unsigned char>& bytes;
  std::size_t pos = 0;

  void skip_space() {
    while (pos < bytes.size()) {
      const unsigned char c = bytes[pos];
      if (c == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(c)) {
        ++pos;
      } else {
        break;
      }
    }
  }

  std::uint32_t read_uint() {
    skip_space();
    if (pos >= bytes.size() || !std::isdigit(bytes[pos])) {
      throw std::runtime_error("malformed netpbm header");
    }
    std::uint64_t v = 0;
    while (pos < bytes.size() && std::isdigit(bytes[pos])) {
      v = v * 10 + (bytes[pos] - '0');
      if (v > 0xffffffffull) throw std::runtime_error("netpbm dimension overflow");
      ++pos;
    }
    return static_cast<std::uint32_t>(v);
  }
};

Tensor load_pnm(const std::vector<unsigned char>& bytes, std::uint32_t channels) {
  PnmReader r{bytes, 2};
  const std::uint32_t w = r.read_uint();
  const std::uint32_t h = r.read_uint();
  const std::uint32_t maxval = r.read_uint();
  if (w == 0 || h == 0) throw std::runtime_error("netpbm image has zero dimension");
  if (maxval != 255) throw std::runtime_error("only maxval 255 netpbm images are supported");
  if (r.pos >= bytes.size() || !std::isspace(bytes[r.pos])) {
    throw std::runtime_error("malformed netpbm header");
  }
  ++r.pos;  // single whitespace byte separates header from raster
  const std::size_t need = static_cast<std::size_t>(w) * h * channels;
  if (bytes.size() - r.pos != need) {
    throw std::runtime_error("netpbm raster size does not match header");
  }
  Tensor t(channels, h, w);
  const unsigned char* raster = bytes.data() + r.pos;
  for (std::uint32_t y = 0; y < h; ++y) {
    for (std::uint32_t x = 0; x < w; ++x) {
      for (std::uint32_t c = 0; c < channels; ++c) {
        t.at(c, y, x) = raster[(static_cast<std::size_t>(y) * w + x) * channels + c] / 255.0f;
      }
    }
  }
  return t;
}

}  // namespace

void save_pgm(const std::string& path, const Tensor& t) {
  if (t.channels != 1) throw std::invalid_argument("PGM output needs a 1-channel tensor");
  std::vector<unsigned char> out;
  out.reserve(t.data.size() + 32);
  append_header(out, "P5", t.width, t.height);
  for (float v : t.data) out.push_back(quantize(v));
  write_file(path, out);
}

void save_ppm(const std::string& path, const Tensor& t) {
  if (t.channels != 3) throw std::invalid_argument("PPM output needs a 3-channel tensor");
  std::vector<unsigned char> out;
  out.reserve(t.data.size() + 32);
  append_header(out, "P6", t.width, t.height);
  for (std::uint32_t y = 0; y < t.height; ++y) {
    for (std::uint32_t x = 0; x < t.width; ++x) {
      for (std::uint32_t c = 0; c < 3; ++c) out.push_back(quantize(t.at(c, y, x)));
    }
  }
  write_file(path, out);
}

Tensor load_image(const std::string& path) {
  const auto bytes = read_file(path);
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), "TEN1", 4) == 0) {
    return tensor_from_bytes(bytes);
  }
  if (bytes.size() >= 2 && bytes[0] == 'P') {
    if (bytes[1] == '5') return load_pnm(bytes, 1);
    if (bytes[1] == '6') return load_pnm(bytes, 3);
  }
  throw std::runtime_error("unrecognized image format: " + path);
}

}  // namespace sphconv
