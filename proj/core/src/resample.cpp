#include "sphconv/resample.hpp"

#include <cmath>
#include <stdexcept>

#include "sphconv/geometry.hpp"
#include "sphconv/parallel.hpp"

namespace sphconv {

float bilinear_sample(const Tensor& img, std::uint32_t channel, double u, double v) {
  if (img.width == 0 || img.height == 0 || img.channels == 0) {
    throw std::invalid_argument("bilinear_sample on an empty image");
  }
  if (channel >= img.channels) throw std::invalid_argument("channel out of range");
  if (!std::isfinite(u) || !std::isfinite(v)) {
    throw std::invalid_argument("non-finite sample coordinates");
  }
  const std::uint32_t w = img.width;
  const std::uint32_t h = img.height;

  u = wrap_coord(u, static_cast<double>(w));
  const double uf = std::floor(u);
  const double s = u - uf;
  const std::uint32_t x0 = static_cast<std::uint32_t>(uf);
  const std::uint32_t x1 = (x0 + 1 == w) ? 0 : x0 + 1;

  const double vf = std::floor(v);
  const double t = v - vf;
  const auto clamp_row = [h](double r) -> std::uint32_t {
    if (r < 0.0) return 0;
    if (r > h - 1.0) return h - 1;
    return static_cast<std::uint32_t>(r);
  };
  const std::uint32_t y0 = clamp_row(vf);
  const std::uint32_t y1 = clamp_row(vf + 1.0);

  const double a = img.at(channel, y0, x0);
  const double b = img.at(channel, y0, x1);
  const double c = img.at(channel, y1, x0);
  const double d = img.at(channel, y1, x1);
  const double top = a + s * (b - a);
  const double bot = c + s * (d - c);
  return static_cast<float>(top + t * (bot - top));
}

Tensor resample(const Tensor& input, const SamplingLut& lut, int threads) {
  if (input.width != static_cast<std::uint32_t>(lut.cfg.width) ||
      input.height != static_cast<std::uint32_t>(lut.cfg.height)) {
    throw std::invalid_argument("input dimensions do not match the sampling table");
  }
  const int k = lut.spec.k;
  Tensor out(input.channels, static_cast<std::uint32_t>(lut.out_h * k),
             static_cast<std::uint32_t>(lut.out_w * k));

  parallel_for(lut.out_h, [&](int i) {
    for (int j = 0; j < lut.out_w; ++j) {
      for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
          const double u = lut.u_at(i, j, a, b);
          const double v = lut.v_at(i, j, a, b);
          for (std::uint32_t c = 0; c < input.channels; ++c) {
            out.at(c, static_cast<std::uint32_t>(i * k + a),
                   static_cast<std::uint32_t>(j * k + b)) = bilinear_sample(input, c, u, v);
          }
        }
      }
    }
  }, threads);
  return out;
}

}  // namespace sphconv
