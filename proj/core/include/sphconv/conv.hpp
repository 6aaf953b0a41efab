#pragma once

#include <string>
#include <vector>

#include "sphconv/kernel.hpp"
#include "sphconv/lut.hpp"
#include "sphconv/tensor.hpp"

namespace sphconv {

// Square convolution weights, [out][in][kh][kw].
struct WeightSet {
  std::uint32_t out_channels = 0;
  std::uint32_t in_channels = 0;
  std::uint32_t kh = 0;
  std::uint32_t kw = 0;
  std::vector<float> weights;
  std::vector<float> bias;  // empty when the set carries no bias

  WeightSet() = default;
  WeightSet(std::uint32_t out_c, std::uint32_t in_c, std::uint32_t k, bool with_bias);

  float at(std::uint32_t oc, std::uint32_t ic, std::uint32_t a, std::uint32_t b) const {
    return weights[((static_cast<std::size_t>(oc) * in_channels + ic) * kh + a) * kw + b];
  }
  float& at(std::uint32_t oc, std::uint32_t ic, std::uint32_t a, std::uint32_t b) {
    return weights[((static_cast<std::size_t>(oc) * in_channels + ic) * kh + a) * kw + b];
  }
};

// "WGT1" container: magic, u32 out/in/kh/kw, u8 bias flag, 3 zero bytes,
// float32 weights in [out][in][kh][kw] order, then float32 bias when flagged.
std::vector<unsigned char> weights_to_bytes(const WeightSet& w);
WeightSet weights_from_bytes(const std::vector<unsigned char>& bytes);
void save_weights(const std::string& path, const WeightSet& w);
WeightSet load_weights(const std::string& path);

// Valid (no padding) convolution whose stride equals the kernel size, so
// each output pixel consumes one disjoint k*k block. Taps accumulate in
// double, inner loops ordered (in channel, row, col).
Tensor conv2d_strided(const Tensor& input, const WeightSet& w, std::uint32_t stride,
                      int threads = 0);

// Reference path that skips the expanded layout: gathers the k*k taps of
// each table cell straight from the source image and dots them with the
// weights, using the same float rounding and accumulation order as
// resample + conv2d_strided.
Tensor gather_dot_oracle(const Tensor& input, const SamplingLut& lut, const WeightSet& w,
                         int threads = 0);

// Pyramid of sphere-sampled convolutions: one k=4 stage, then k=2 stages,
// each running on the previous stage's output grid. Returns every stage's
// feature map, coarsest last.
std::vector<Tensor> cascade_downsample(const Tensor& input,
                                       const std::vector<KernelSpec>& stages,
                                       const std::vector<WeightSet>& stage_weights,
                                       int threads = 0);

}  // namespace sphconv
