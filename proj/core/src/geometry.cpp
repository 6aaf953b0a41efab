#include "sphconv/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sphconv {

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

ProjectionConfig::ProjectionConfig(int w, int h) : width(w), height(h) {
  if (h < 1 || w < 2) {
    throw std::invalid_argument("projection: need W >= 2 and H >= 1, got " +
                                std::to_string(w) + "x" + std::to_string(h));
  }
  if (w != 2 * h) {
    throw std::invalid_argument("projection: W = 2*H required, got W=" +
                                std::to_string(w) + " H=" + std::to_string(h));
  }
}

double wrap_coord(double x, double period) {
  double r = std::fmod(x, period);
  if (r < 0.0) r += period;
  if (r >= period) r -= period;  // fmod can land exactly on period after +=
  return r;
}

double circular_distance(double a, double b, double period) {
  double d = std::fabs(wrap_coord(a, period) - wrap_coord(b, period));
  return std::min(d, period - d);
}

Vec3 pixel_to_dir(const ProjectionConfig& cfg, double row, double col) {
  if (!std::isfinite(row) || !std::isfinite(col)) {
    throw std::invalid_argument("pixel_to_dir: non-finite pixel coordinates");
  }
  const double colat = kPi * (row + 0.5) / cfg.height;
  const double lon = kTwoPi * (col + 0.5) / cfg.width;
  const double s = std::sin(colat);
  return {s * std::cos(lon), s * std::sin(lon), std::cos(colat)};
}

static void require_unit(const Vec3& d, const char* who) {
  if (!std::isfinite(d.x) || !std::isfinite(d.y) || !std::isfinite(d.z) ||
      std::fabs(d.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument(std::string(who) + ": direction is not unit length");
  }
}

ErpCoord dir_to_erp(const ProjectionConfig& cfg, const Vec3& d) {
  require_unit(d, "dir_to_erp");
  const double u_angle = cfg.width / kTwoPi * std::atan2(d.y, d.x);
  const double z = std::clamp(d.z, -1.0, 1.0);
  const double v_angle = cfg.height / kPi * std::acos(z);
  return {wrap_coord(u_angle - 0.5, cfg.width), v_angle - 0.5};
}

Rotation rotation_to_center(const Vec3& center) {
  require_unit(center, "rotation_to_center");
  const double colat = std::acos(std::clamp(center.z, -1.0, 1.0));
  const double lon = std::atan2(center.y, center.x);
  const double ct = std::cos(colat), st = std::sin(colat);
  const double cp = std::cos(lon), sp = std::sin(lon);
  // Rz(lon) * Ry(colat)
  Rotation r;
  r.m[0][0] = cp * ct; r.m[0][1] = -sp; r.m[0][2] = cp * st;
  r.m[1][0] = sp * ct; r.m[1][1] = cp;  r.m[1][2] = sp * st;
  r.m[2][0] = -st;     r.m[2][1] = 0.0; r.m[2][2] = ct;
  return r;
}

std::vector<Vec3> circle_points(double radius, int n, double azimuth_offset) {
  if (!(radius > 0.0) || !(radius < kPi)) {
    throw std::invalid_argument("circle_points: radius must be in (0, pi)");
  }
  if (n < 1) {
    throw std::invalid_argument("circle_points: need at least one point");
  }
  if (!std::isfinite(azimuth_offset)) {
    throw std::invalid_argument("circle_points: non-finite azimuth offset");
  }
  const double sr = std::sin(radius), cr = std::cos(radius);
  std::vector<Vec3> pts;
  pts.reserve(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double az = azimuth_offset + kTwoPi * k / n;
    pts.push_back({sr * std::cos(az), sr * std::sin(az), cr});
  }
  return pts;
}

double great_circle_distance(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

}  // namespace sphconv
