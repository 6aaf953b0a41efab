#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sphconv/geometry.hpp"
#include "sphconv/kernel.hpp"

// Full-image sampling lookup tables: for every output position, the ERP
// pixel-index coordinates of all k*k kernel taps. Building one is the
// offline step; applying one is a gather (see resample.hpp).
//
// Binary format "SLUT" (little-endian):
//   magic "SLUT", u32 version=1, u32 W, u32 H, u32 k, u32 stride,
//   u32 out_w, u32 out_h, u8 spacing_mode (0=uniform, 1=azimuth_matched),
//   7 zero bytes, then out_h*out_w*k*k records of (f32 u, f32 v) in
//   row-major (output row, output col, kernel row, kernel col) order.

namespace sphconv {

inline constexpr std::uint32_t kSlutVersion = 1;
inline constexpr std::size_t kSlutHeaderSize = 40;

struct SamplingLut {
  ProjectionConfig cfg;
  KernelSpec spec;
  int out_w = 0;
  int out_h = 0;
  // Interleaved (u, v) pairs; u in [0, W), v in [-0.5, H-0.5].
  std::vector<float> coords;

  std::size_t tap_index(int I, int J, int a, int b) const {
    return (((static_cast<std::size_t>(I) * out_w + J) * spec.k + a) * spec.k + b) * 2;
  }
  float u_at(int I, int J, int a, int b) const { return coords[tap_index(I, J, a, b)]; }
  float v_at(int I, int J, int a, int b) const { return coords[tap_index(I, J, a, b) + 1]; }
};

// Center of output position (I, J) in input pixel-index coordinates
// (row, col). Block kernels center on the middle of their k x k block;
// the 7x7 kernel centers on each pixel itself.
std::pair<double, double> lut_center_pixel(const KernelSpec& spec, int I, int J);

// The k*k tap directions for a kernel centered at the given pixel position,
// in 64-bit precision (the values build_lut quantizes to f32).
std::vector<Vec3> tap_directions(const ProjectionConfig& cfg, const KernelTemplate& tmpl,
                                 double center_row, double center_col);

// Bakes the LUT. For k in {2,4}, W and H must be divisible by k. Output is
// bit-identical for any thread count.
SamplingLut build_lut(const ProjectionConfig& cfg, const KernelSpec& spec,
                      int threads = 0);

std::vector<unsigned char> slut_to_bytes(const SamplingLut& lut);
SamplingLut slut_from_bytes(const std::vector<unsigned char>& bytes);
void save_slut(const SamplingLut& lut, const std::string& path);
SamplingLut load_slut(const std::string& path);

}  // namespace sphconv
