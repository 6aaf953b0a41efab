#include "sphconv/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace sphconv {

KernelSpec::KernelSpec(int kernel_size, SpacingMode spacing)
    : k(kernel_size), stride(kernel_size == 7 ? 1 : kernel_size), mode(spacing) {
  if (k != 2 && k != 4 && k != 7) {
    throw std::invalid_argument("kernel size must be 2, 4, or 7, got " +
                                std::to_string(k));
  }
}

namespace {

struct TapInfo {
  int index;       // a*k + b
  int cheb2;       // Chebyshev distance to the kernel center, in half pixels
  double azimuth;  // planar azimuth atan2(dcol, drow) wrapped to [0, 2*pi)
};

// Assigns uniformly spaced circle azimuths (phase 0 = due south) to the
// ring's taps. Both sequences are in cyclic order, so the best bijection is
// a cyclic shift; pick the shift with the least total angular mismatch,
// lowest shift on ties.
void assign_uniform_azimuths(std::vector<TapInfo>& ring) {
  const int n = static_cast<int>(ring.size());
  std::sort(ring.begin(), ring.end(),
            [](const TapInfo& a, const TapInfo& b) { return a.azimuth < b.azimuth; });
  int best_shift = 0;
  double best_cost = -1.0;
  for (int s = 0; s < n; ++s) {
    double cost = 0.0;
    for (int i = 0; i < n; ++i) {
      const double uniform_az = kTwoPi * ((i + s) % n) / n;
      cost += circular_distance(ring[static_cast<size_t>(i)].azimuth, uniform_az, kTwoPi);
    }
    if (best_cost < 0.0 || cost < best_cost) {
      best_cost = cost;
      best_shift = s;
    }
  }
  for (int i = 0; i < n; ++i) {
    ring[static_cast<size_t>(i)].azimuth = kTwoPi * ((i + best_shift) % n) / n;
  }
}

}  // namespace

KernelTemplate build_template(const ProjectionConfig& cfg, const KernelSpec& spec) {
  const int k = spec.k;
  const double pitch = cfg.pixel_pitch();
  const double center = (k - 1) / 2.0;

  // Group taps into Chebyshev rings (half-pixel units keep the key integral).
  std::map<int, std::vector<TapInfo>> rings;
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      const double drow = a - center;
      const double dcol = b - center;
      const int cheb2 = static_cast<int>(std::lround(
          2.0 * std::max(std::fabs(drow), std::fabs(dcol))));
      const double az = wrap_coord(std::atan2(dcol, drow), kTwoPi);
      rings[cheb2].push_back({a * k + b, cheb2, az});
    }
  }

  auto ring_radius = [&](int cheb2) {
    if (cheb2 == 0) return 0.0;
    const double rho = cheb2 / 2.0;
    // All four k=2 taps are corner offsets; use their diagonal distance.
    return (k == 2 ? rho * std::sqrt(2.0) : rho) * pitch;
  };

  const double max_radius = ring_radius(rings.rbegin()->first);
  if (max_radius >= kPi) {
    throw std::invalid_argument("kernel " + std::to_string(k) + " does not fit a " +
                                std::to_string(cfg.width) + "-pixel-wide sphere");
  }

  KernelTemplate tmpl;
  tmpl.k = k;
  tmpl.points.resize(static_cast<size_t>(k) * k);
  for (auto& [cheb2, taps] : rings) {
    const double radius = ring_radius(cheb2);
    tmpl.rings.push_back({radius, static_cast<int>(taps.size())});
    if (cheb2 == 0) {
      tmpl.points[static_cast<size_t>(taps.front().index)] = {0.0, 0.0, 1.0};
      continue;
    }
    if (spec.mode == SpacingMode::uniform) {
      assign_uniform_azimuths(taps);
    }
    const double sr = std::sin(radius), cr = std::cos(radius);
    for (const TapInfo& tap : taps) {
      tmpl.points[static_cast<size_t>(tap.index)] = {
          sr * std::cos(tap.azimuth), sr * std::sin(tap.azimuth), cr};
    }
  }
  return tmpl;
}

}  // namespace sphconv
