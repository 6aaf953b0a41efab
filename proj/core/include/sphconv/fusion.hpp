#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sphconv/tensor.hpp"

namespace sphconv {

// Mask attention: out = max(0, s + s*m) per element. Shapes must match
// exactly; every semantic channel is gated by its own mask channel.
Tensor fuse(const Tensor& semantics, const Tensor& masks);

struct LabelMap {
  std::uint32_t height = 0;
  std::uint32_t width = 0;
  std::vector<std::uint16_t> labels;

  std::uint16_t at(std::uint32_t y, std::uint32_t x) const {
    return labels[static_cast<std::size_t>(y) * width + x];
  }
};

// Channel with the largest score wins; ties go to the lowest index.
LabelMap argmax_labels(const Tensor& scores);

// Writes label ids as raw gray levels. Only maps with ids up to 255 fit.
void save_label_pgm(const std::string& path, const LabelMap& map);

}  // namespace sphconv
