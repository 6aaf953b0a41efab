#pragma once

#include <vector>

// Spherical <-> equirectangular (ERP) coordinate machinery.
//
// Conventions used throughout the library:
//  * The ERP image is W x H pixels with W = 2H, so the angular pitch
//    2*pi/W is identical along rows and meridians.
//  * Pixel (row i, col j) is centered at colatitude pi*(i+0.5)/H and
//    longitude 2*pi*(j+0.5)/W. No pixel center sits exactly on a pole.
//  * dir_to_erp returns pixel-index coordinates (the 0.5 shift already
//    applied): a direction on a pixel center maps to integer (u, v).
//  * u (longitude axis) wraps modulo W; v does not wrap. The north pole
//    maps to v = -0.5, the south pole to v = H - 0.5.
//  * Directions are unit vectors with +z toward the north pole.
//
// All functions here are pure; geometry is computed in 64-bit floats.

namespace sphconv {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const;
};

// ERP image geometry. Construction enforces W = 2H, W >= 2, H >= 1.
struct ProjectionConfig {
  int width;
  int height;

  ProjectionConfig(int w, int h);

  // Angular size of one pixel, 2*pi/W (== pi/H).
  double pixel_pitch() const { return kTwoPi / width; }
};

// Continuous pixel-index ERP coordinates. u in [0, W), v in [-0.5, H-0.5].
struct ErpCoord {
  double u = 0.0;
  double v = 0.0;
};

// 3x3 rotation matrix, row major.
struct Rotation {
  double m[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

  Vec3 apply(const Vec3& v) const {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
  }
};

// Wraps x into [0, period).
double wrap_coord(double x, double period);

// min(|a-b| mod period, period - |a-b| mod period) -- distance on a circle.
double circular_distance(double a, double b, double period);

// Direction of the (possibly fractional) pixel position. row = -0.5 is the
// north pole, row = H-0.5 the south pole; col wraps. Throws
// std::invalid_argument on non-finite input.
Vec3 pixel_to_dir(const ProjectionConfig& cfg, double row, double col);

// Back-projection of a unit direction onto the ERP pixel grid. Requires the
// input to be unit within 1e-9, else throws std::invalid_argument.
ErpCoord dir_to_erp(const ProjectionConfig& cfg, const Vec3& d);

// Rotation R = Rz(lon) * Ry(colat) taking the north pole to `center`
// (unit within 1e-9, else throws). Maps the template's local +x axis to the
// local south (increasing v) direction and +y to local east (increasing u).
Rotation rotation_to_center(const Vec3& center);

// n points on the circle of given angular radius around the north pole,
// at longitudes azimuth_offset + 2*pi*k/n, k = 0..n-1. Requires
// 0 < radius < pi and n >= 1.
std::vector<Vec3> circle_points(double radius, int n, double azimuth_offset);

// Angle between two unit vectors (the sphere's intrinsic metric).
double great_circle_distance(const Vec3& a, const Vec3& b);

}  // namespace sphconv
