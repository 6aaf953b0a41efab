#include "sphconv/fusion.hpp"

#include <stdexcept>

#include "sphconv/bytes.hpp"

namespace sphconv {

Tensor fuse(const Tensor& semantics, const Tensor& masks) {
  if (!semantics.same_shape(masks)) {
    throw std::invalid_argument("semantics and masks must have identical shapes");
  }
  Tensor out(semantics.channels, semantics.height, semantics.width);
  for (std::size_t i = 0; i < out.data.size(); ++i) {
    const float s = semantics.data[i];
    const float gated = s + s * masks.data[i];
    out.data[i] = gated > 0.0f ? gated : 0.0f;
  }
  return out;
}

LabelMap argmax_labels(const Tensor& scores) {
  if (scores.channels == 0 || scores.height == 0 || scores.width == 0) {
    throw std::invalid_argument("argmax_labels on an empty tensor");
  }
  LabelMap map;
  map.height = scores.height;
  map.width = scores.width;
  map.labels.resize(static_cast<std::size_t>(scores.height) * scores.width);
  for (std::uint32_t y = 0; y < scores.height; ++y) {
    for (std::uint32_t x = 0; x < scores.width; ++x) {
      std::uint32_t best = 0;
      float best_score = scores.at(0, y, x);
      for (std::uint32_t c = 1; c < scores.channels; ++c) {
        const float v = scores.at(c, y, x);
        if (v > best_score) {
          best_score = v;
          best = c;
        }
      }
      map.labels[static_cast<std::size_t>(y) * scores.width + x] =
          static_cast<std::uint16_t>(best);
    }
  }
  return map;
}

void save_label_pgm(const std::string& path, const LabelMap& map) {
  if (map.height == 0 || map.width == 0) {
    throw std::invalid_argument("label map is empty");
  }
  std::vector<unsigned char> out;
  out.reserve(map.labels.size() + 32);
  char buf[64];
  const int n = std::snprintf(buf, sizeof(buf), "P5\n%u %u\n255\n", map.width, map.height);
  out.insert(out.end(), buf, buf + n);
  for (std::uint16_t id : map.labels) {
    if (id > 255) throw std::invalid_argument("label ids above 255 do not fit a PGM");
    out.push_back(static_cast<unsigned char>(id));
  }
  write_file(path, out);
}

}  // namespace sphconv
