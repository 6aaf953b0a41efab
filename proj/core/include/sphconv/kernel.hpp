#pragma once

#include <cstdint>
#include <vector>

#include "sphconv/geometry.hpp"

// North-pole kernel templates.
//
// A k x k planar kernel becomes k*k directions near the north pole, grouped
// in concentric circles. With pitch D = 2*pi/W:
//   k=2: one circle of 4 points, radius sqrt(2)*0.5*D (diagonal offsets).
//   k=4: circles of 4 and 12 points at radii 0.5*D and 1.5*D.
//   k=7: the pole itself plus circles of 8, 16 and 24 points at D, 2D, 3D.
// Each template point is tied to one planar tap (a, b): the tap's Chebyshev
// ring picks the circle, its azimuth picks the position on it. Azimuth 0
// points south (increasing row); azimuths grow toward east (increasing col).

namespace sphconv {

enum class SpacingMode : std::uint8_t {
  // Points uniformly spaced 2*pi/n apart on each circle, first point south;
  // taps are matched to circle points in cyclic azimuth order.
  uniform = 0,
  // Points placed at the exact azimuths of their planar taps (non-uniform
  // spacing), so each pretrained weight keeps its geometric position.
  azimuth_matched = 1,
};

struct KernelSpec {
  int k;
  int stride;  // center step in input pixels: k for k in {2,4}, 1 for k=7
  SpacingMode mode;

  explicit KernelSpec(int kernel_size,
                      SpacingMode spacing = SpacingMode::azimuth_matched);
};

struct KernelRing {
  double radius;  // angular radius, radians (0 for the k=7 center point)
  int count;
};

struct KernelTemplate {
  int k = 0;
  std::vector<Vec3> points;      // k*k directions, row-major tap order
  std::vector<KernelRing> rings;  // ascending radius

  const Vec3& at(int a, int b) const { return points[static_cast<size_t>(a) * k + b]; }
};

// Builds the template for the given image width. Throws std::invalid_argument
// for unsupported k or when the outermost circle would reach past the south
// pole (image too narrow for the kernel).
KernelTemplate build_template(const ProjectionConfig& cfg, const KernelSpec& spec);

}  // namespace sphconv
