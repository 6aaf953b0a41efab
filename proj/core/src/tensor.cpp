#include "sphconv/tensor.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "sphconv/bytes.hpp"

namespace sphconv {

namespace {
constexpr char kMagic[4] = {'T', 'E', 'N', '1'};
// Caps a single dimension so header fields cannot drive silly allocations.
constexpr std::uint32_t kMaxDim = 1u << 24;
}  // namespace

Tensor::Tensor(std::uint32_t c, std::uint32_t h, std::uint32_t w)
    : channels(c), height(h), width(w) {
  if (c == 0 || h == 0 || w == 0) {
    throw std::invalid_argument("tensor dimensions must be positive");
  }
  data.assign(static_cast<std::size_t>(c) * h * w, 0.0f);
}

std::vector<unsigned char> tensor_to_bytes(const Tensor& t) {
  if (t.data.size() != static_cast<std::size_t>(t.channels) * t.height * t.width) {
    throw std::invalid_argument("tensor payload does not match its dimensions");
  }
  std::vector<unsigned char> out;
  out.reserve(16 + t.data.size() * 4);
  out.insert(out.end(), kMagic, kMagic + 4);
  put_u32le(out, t.channels);
  put_u32le(out, t.height);
  put_u32le(out, t.width);
  for (float v : t.data) put_f32le(out, v);
  return out;
}

Tensor tensor_from_bytes(const std::vector<unsigned char>& bytes) {
  if (bytes.size() < 16 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw std::runtime_error("not a TEN1 tensor");
  }
  const std::uint32_t c = get_u32le(bytes.data() + 4);
  const std::uint32_t h = get_u32le(bytes.data() + 8);
  const std::uint32_t w = get_u32le(bytes.data() + 12);
  if (c == 0 || h == 0 || w == 0 || c > kMaxDim || h > kMaxDim || w > kMaxDim) {
    throw std::runtime_error("TEN1 header has unusable dimensions");
  }
  const std::size_t count = static_cast<std::size_t>(c) * h * w;
  if (bytes.size() != 16 + count * 4) {
    throw std::runtime_error("TEN1 payload size does not match header");
  }
  Tensor t(c, h, w);
  for (std::size_t i = 0; i < count; ++i) {
    const float v = get_f32le(bytes.data() + 16 + i * 4);
    if (!std::isfinite(v)) throw std::runtime_error("TEN1 payload has non-finite values");
    t.data[i] = v;
  }
  return t;
}

void save_tensor(const std::string& path, const Tensor& t) {
  write_file(path, tensor_to_bytes(t));
}

Tensor load_tensor(const std::string& path) {
  return tensor_from_bytes(read_file(path));
}

}  // namespace sphconv
