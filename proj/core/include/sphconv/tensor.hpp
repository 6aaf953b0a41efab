#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sphconv {

// Dense float planes, channel-major: data[(c*height + y)*width + x].
struct Tensor {
  std::uint32_t channels = 0;
  std::uint32_t height = 0;
  std::uint32_t width = 0;
  std::vector<float> data;

  Tensor() = default;
  Tensor(std::uint32_t c, std::uint32_t h, std::uint32_t w);

  std::size_t index(std::uint32_t c, std::uint32_t y, std::uint32_t x) const {
    return (static_cast<std::size_t>(c) * height + y) * width + x;
  }
  float at(std::uint32_t c, std::uint32_t y, std::uint32_t x) const {
    return data[index(c, y, x)];
  }
  float& at(std::uint32_t c, std::uint32_t y, std::uint32_t x) {
    return data[index(c, y, x)];
  }
  bool same_shape(const Tensor& other) const {
    return channels == other.channels && height == other.height && width == other.width;
  }
};

// "TEN1" container: magic, u32 channels/height/width, then float32 payload
// in channel-major order. All fields little-endian.
std::vector<unsigned char> tensor_to_bytes(const Tensor& t);
Tensor tensor_from_bytes(const std::vector<unsigned char>& bytes);

void save_tensor(const std::string& path, const Tensor& t);
Tensor load_tensor(const std::string& path);

}  // namespace sphconv
