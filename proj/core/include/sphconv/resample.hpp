#pragma once

#include "sphconv/lut.hpp"
#include "sphconv/tensor.hpp"

namespace sphconv {

// Bilinear read at fractional pixel (u, v): u wraps around the seam,
// v clamps so the pole rows replicate. Math runs in double, the result
// is rounded once to float.
float bilinear_sample(const Tensor& img, std::uint32_t channel, double u, double v);

// Expands every output cell of the table into its k*k tap block:
// result is (C, out_h*k, out_w*k) with tap (a, b) of cell (I, J) at
// row I*k + a, col J*k + b. A stride-k planar convolution over this
// layout then consumes exactly one cell per step.
Tensor resample(const Tensor& input, const SamplingLut& lut, int threads = 0);

}  // namespace sphconv
