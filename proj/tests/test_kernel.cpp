#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <vector>

#include "sphconv/bytes.hpp"
#include "sphconv/kernel.hpp"
#include "sphconv/lut.hpp"
#include "testutil.hpp"

using namespace sphconv;

TEST_CASE("kernel spec pins stride per kernel size") {
  CHECK(KernelSpec(2).stride == 2);
  CHECK(KernelSpec(4).stride == 4);
  CHECK(KernelSpec(7).stride == 1);
  CHECK(KernelSpec(4).mode == SpacingMode::azimuth_matched);
  CHECK_THROWS_AS(KernelSpec(3), std::invalid_argument);
  CHECK_THROWS_AS(KernelSpec(0), std::invalid_argument);
  CHECK_THROWS_AS(KernelSpec(-7), std::invalid_argument);
}

namespace {

std::map<long, int> ring_census(const KernelTemplate& tmpl) {
  // count points per polar-angle ring, keyed in nanoradians
  std::map<long, int> census;
  for (const Vec3& p : tmpl.points) {
    const double r = std::atan2(std::hypot(p.x, p.y), p.z);
    ++census[std::lround(r * 1e9)];
  }
  return census;
}

}  // namespace

TEST_CASE("k=4 template: 16 points on two circles") {
  const ProjectionConfig cfg(512, 256);
  const KernelTemplate tmpl = build_template(cfg, KernelSpec(4));
  REQUIRE(tmpl.points.size() == 16);
  const double d = cfg.pixel_pitch();

  REQUIRE(tmpl.rings.size() == 2);
  CHECK(tmpl.rings[0].radius == doctest::Approx(0.5 * d).epsilon(1e-12));
  CHECK(tmpl.rings[0].count == 4);
  CHECK(tmpl.rings[1].radius == doctest::Approx(1.5 * d).epsilon(1e-12));
  CHECK(tmpl.rings[1].count == 12);

  const auto census = ring_census(tmpl);
  REQUIRE(census.size() == 2);
  CHECK(census.at(std::lround(0.5 * d * 1e9)) == 4);
  CHECK(census.at(std::lround(1.5 * d * 1e9)) == 12);

  for (const Vec3& p : tmpl.points) CHECK(std::abs(p.norm() - 1.0) <= 1e-15);

  // corner tap (0,0) sits on the outer circle at planar azimuth
  // atan2(-1.5, -1.5), i.e. x < 0, y < 0
  const Vec3& corner = tmpl.at(0, 0);
  CHECK(corner.z == doctest::Approx(std::cos(1.5 * d)).epsilon(1e-15));
  CHECK(corner.x < 0.0);
  CHECK(corner.y < 0.0);
  CHECK(std::atan2(corner.y, corner.x) == doctest::Approx(-3 * kPi / 4).epsilon(1e-12));
}

TEST_CASE("k=2 template: one diagonal circle") {
  const ProjectionConfig cfg(512, 256);
  const KernelTemplate tmpl = build_template(cfg, KernelSpec(2));
  REQUIRE(tmpl.points.size() == 4);
  REQUIRE(tmpl.rings.size() == 1);
  CHECK(tmpl.rings[0].radius ==
        doctest::Approx(0.5 * std::sqrt(2.0) * cfg.pixel_pitch()).epsilon(1e-12));
  CHECK(tmpl.rings[0].count == 4);

  // tap (0,1) offsets (-0.5, +0.5): azimuth 3pi/4 from south toward east
  const Vec3& p = tmpl.at(0, 1);
  CHECK(std::atan2(p.y, p.x) == doctest::Approx(3 * kPi / 4).epsilon(1e-12));
}

TEST_CASE("k=7 template: pole plus 8/16/24 point circles") {
  const ProjectionConfig cfg(512, 256);
  const KernelTemplate tmpl = build_template(cfg, KernelSpec(7));
  REQUIRE(tmpl.points.size() == 49);
  const double d = cfg.pixel_pitch();

  REQUIRE(tmpl.rings.size() == 4);
  CHECK(tmpl.rings[0].radius == 0.0);
  CHECK(tmpl.rings[0].count == 1);
  for (int r = 1; r <= 3; ++r) {
    CHECK(tmpl.rings[static_cast<std::size_t>(r)].radius == doctest::Approx(r * d).epsilon(1e-12));
    CHECK(tmpl.rings[static_cast<std::size_t>(r)].count == 8 * r);
  }

  // center tap is exactly the pole
  const Vec3& c = tmpl.at(3, 3);
  CHECK(c.x == 0.0);
  CHECK(c.y == 0.0);
  CHECK(c.z == 1.0);

  const auto census = ring_census(tmpl);
  CHECK(census.at(std::lround(1.0 * d * 1e9)) == 8);
  CHECK(census.at(std::lround(2.0 * d * 1e9)) == 16);
  CHECK(census.at(std::lround(3.0 * d * 1e9)) == 24);
}

TEST_CASE("azimuth-matched taps keep their planar azimuths") {
  const ProjectionConfig cfg(256, 128);
  const KernelTemplate tmpl = build_template(cfg, KernelSpec(4, SpacingMode::azimuth_matched));
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const double dy = a - 1.5;
      const double dx = b - 1.5;
      const Vec3& p = tmpl.at(a, b);
      const double want = std::atan2(dx, dy);  // azimuth 0 = south, grows east
      CHECK(circular_distance(std::atan2(p.y, p.x), want, kTwoPi) <= 1e-12);
    }
  }
}

TEST_CASE("uniform mode spreads each circle evenly") {
  const ProjectionConfig cfg(256, 128);
  const KernelTemplate tmpl = build_template(cfg, KernelSpec(4, SpacingMode::uniform));
  // inner circle: taps with offsets (+-0.5, +-0.5)
  const int inner[][2] = {{1, 1}, {1, 2}, {2, 1}, {2, 2}};
  std::vector<double> az;
  for (const auto& ab : inner) {
    const Vec3& p = tmpl.at(ab[0], ab[1]);
    az.push_back(wrap_coord(std::atan2(p.y, p.x), kTwoPi));
  }
  std::sort(az.begin(), az.end());
  // evenly spaced pi/2 apart with the first point due south (azimuth 0)
  for (int i = 0; i < 4; ++i) {
    CHECK(az[static_cast<std::size_t>(i)] == doctest::Approx(i * kPi / 2).epsilon(1e-9));
  }
}

TEST_CASE("uniform assignment keeps taps near their planar azimuths") {
  const ProjectionConfig cfg(256, 128);
  const KernelTemplate uni = build_template(cfg, KernelSpec(7, SpacingMode::uniform));
  const KernelTemplate mat = build_template(cfg, KernelSpec(7, SpacingMode::azimuth_matched));
  // on the 8-point circle, uniform spacing of 2pi/8 can move a tap at most
  // half a slot from its exact azimuth
  for (int t = 0; t < 49; ++t) {
    const Vec3& a = uni.points[static_cast<std::size_t>(t)];
    const Vec3& b = mat.points[static_cast<std::size_t>(t)];
    if (std::hypot(b.x, b.y) < 1e-12) continue;  // pole tap has no azimuth
    const double da =
        circular_distance(std::atan2(a.y, a.x), std::atan2(b.y, b.x), kTwoPi);
    CHECK(da <= kPi / 8 + 1e-9);
  }
}

TEST_CASE("template rejects kernels wider than the sphere") {
  // W=4: outermost k=7 circle would sit 3 * (pi/2) from the pole
  CHECK_THROWS_AS(build_template(ProjectionConfig(4, 2), KernelSpec(7)),
                  std::invalid_argument);
}

TEST_CASE("lut centers: block kernels use block middles, k=7 the pixel") {
  const auto c4 = lut_center_pixel(KernelSpec(4), 0, 0);
  CHECK(c4.first == 1.5);
  CHECK(c4.second == 1.5);
  const auto c4b = lut_center_pixel(KernelSpec(4), 2, 3);
  CHECK(c4b.first == 9.5);
  CHECK(c4b.second == 13.5);
  const auto c2 = lut_center_pixel(KernelSpec(2), 0, 0);
  CHECK(c2.first == 0.5);
  CHECK(c2.second == 0.5);
  const auto c7 = lut_center_pixel(KernelSpec(7), 5, 9);
  CHECK(c7.first == 5.0);
  CHECK(c7.second == 9.0);
}

TEST_CASE("build_lut validates block divisibility") {
  CHECK_THROWS_AS(build_lut(ProjectionConfig(20, 10), KernelSpec(4)), std::invalid_argument);
  CHECK_NOTHROW(build_lut(ProjectionConfig(20, 10), KernelSpec(2)));
  CHECK_NOTHROW(build_lut(ProjectionConfig(20, 10), KernelSpec(7)));
}

TEST_CASE("lut output grid follows the stride") {
  const SamplingLut l4 = build_lut(ProjectionConfig(64, 32), KernelSpec(4));
  CHECK(l4.out_w == 16);
  CHECK(l4.out_h == 8);
  const SamplingLut l7 = build_lut(ProjectionConfig(64, 32), KernelSpec(7));
  CHECK(l7.out_w == 64);
  CHECK(l7.out_h == 32);
  CHECK(l7.coords.size() == std::size_t{64} * 32 * 49 * 2);
}

TEST_CASE("lut coordinates stay inside their ranges") {
  for (int k : {2, 4, 7}) {
    const SamplingLut lut = build_lut(ProjectionConfig(64, 32), KernelSpec(k));
    for (std::size_t i = 0; i < lut.coords.size(); i += 2) {
      CHECK(lut.coords[i] >= 0.0f);
      CHECK(lut.coords[i] < 64.0f);
      CHECK(lut.coords[i + 1] >= -0.5f);
      CHECK(lut.coords[i + 1] <= 31.5f);
    }
  }
}

TEST_CASE("lut build is thread-count invariant") {
  for (int k : {2, 7}) {
    const SamplingLut a = build_lut(ProjectionConfig(32, 16), KernelSpec(k), 1);
    const SamplingLut b = build_lut(ProjectionConfig(32, 16), KernelSpec(k), 4);
    REQUIRE(a.coords.size() == b.coords.size());
    CHECK(std::memcmp(a.coords.data(), b.coords.data(), a.coords.size() * 4) == 0);
  }
}

TEST_CASE("neighbor output columns shift by the stride") {
  for (int k : {2, 4, 7}) {
    const SamplingLut lut = build_lut(ProjectionConfig(64, 32), KernelSpec(k));
    double worst = 0.0;
    for (int I = 0; I < lut.out_h; ++I) {
      for (int J = 0; J < lut.out_w; ++J) {
        const int Jn = (J + 1) % lut.out_w;
        for (int a = 0; a < k; ++a) {
          for (int b = 0; b < k; ++b) {
            const double ue = wrap_coord(lut.u_at(I, J, a, b) + lut.spec.stride, 64.0);
            worst = std::max(worst, circular_distance(lut.u_at(I, Jn, a, b), ue, 64.0));
            worst = std::max(worst, std::abs(static_cast<double>(lut.v_at(I, Jn, a, b)) -
                                             lut.v_at(I, J, a, b)));
          }
        }
      }
    }
    CHECK(worst <= 1e-4);
  }
}

TEST_CASE("equator rows mirror in azimuth-matched mode") {
  // grids sized so one output row is centered exactly on the equator
  struct Case {
    int w, h, k, row;
  };
  for (const Case c : {Case{24, 12, 4, 1}, Case{12, 6, 2, 1}, Case{18, 9, 7, 4}}) {
    const SamplingLut lut = build_lut(ProjectionConfig(c.w, c.h), KernelSpec(c.k));
    const auto center = lut_center_pixel(lut.spec, c.row, 0);
    REQUIRE(center.first == doctest::Approx((c.h - 1) / 2.0));  // equator row
    for (int J = 0; J < lut.out_w; ++J) {
      for (int a = 0; a < c.k; ++a) {
        for (int b = 0; b < c.k; ++b) {
          const double v1 = lut.v_at(c.row, J, a, b);
          const double v2 = lut.v_at(c.row, J, c.k - 1 - a, b);
          CHECK(v1 + v2 == doctest::Approx(2.0 * center.first).epsilon(1e-4));
          CHECK(circular_distance(lut.u_at(c.row, J, a, b), lut.u_at(c.row, J, c.k - 1 - a, b),
                                  c.w) <= 1e-4);
        }
      }
    }
  }
}

TEST_CASE("SLUT bytes round-trip and follow the header layout") {
  const SamplingLut lut = build_lut(ProjectionConfig(16, 8), KernelSpec(2));
  const auto bytes = slut_to_bytes(lut);
  REQUIRE(bytes.size() == kSlutHeaderSize + lut.coords.size() * 4);
  CHECK(std::memcmp(bytes.data(), "SLUT", 4) == 0);
  CHECK(get_u32le(&bytes[4]) == kSlutVersion);
  CHECK(get_u32le(&bytes[8]) == 16);   // W
  CHECK(get_u32le(&bytes[12]) == 8);   // H
  CHECK(get_u32le(&bytes[16]) == 2);   // k
  CHECK(get_u32le(&bytes[20]) == 2);   // stride
  CHECK(get_u32le(&bytes[24]) == 8);   // out_w
  CHECK(get_u32le(&bytes[28]) == 4);   // out_h
  CHECK(bytes[32] == 1);               // azimuth-matched
  for (int i = 33; i < 40; ++i) CHECK(bytes[static_cast<std::size_t>(i)] == 0);

  const SamplingLut back = slut_from_bytes(bytes);
  CHECK(back.cfg.width == 16);
  CHECK(back.spec.k == 2);
  CHECK(back.spec.mode == SpacingMode::azimuth_matched);
  REQUIRE(back.coords.size() == lut.coords.size());
  CHECK(std::memcmp(back.coords.data(), lut.coords.data(), lut.coords.size() * 4) == 0);
}

TEST_CASE("SLUT io via files") {
  const SamplingLut lut = build_lut(ProjectionConfig(16, 8), KernelSpec(7, SpacingMode::uniform));
  const std::string path = testutil::scratch_file("roundtrip.slut");
  save_slut(lut, path);
  const SamplingLut back = load_slut(path);
  CHECK(back.spec.mode == SpacingMode::uniform);
  CHECK(back.spec.stride == 1);
  REQUIRE(back.coords.size() == lut.coords.size());
  CHECK(std::memcmp(back.coords.data(), lut.coords.data(), lut.coords.size() * 4) == 0);
  CHECK_THROWS_AS(load_slut(testutil::scratch_file("missing.slut")), std::runtime_error);
}

TEST_CASE("SLUT parser rejects malformed headers") {
  const SamplingLut lut = build_lut(ProjectionConfig(16, 8), KernelSpec(2));
  const auto good = slut_to_bytes(lut);

  auto mutated = [&](std::size_t at, unsigned char value) {
    auto b = good;
    b[at] = value;
    return b;
  };

  CHECK_THROWS_AS(slut_from_bytes({}), std::runtime_error);
  CHECK_THROWS_AS(slut_from_bytes(mutated(0, 'X')), std::runtime_error);   // magic
  CHECK_THROWS_AS(slut_from_bytes(mutated(4, 9)), std::runtime_error);     // version
  CHECK_THROWS_AS(slut_from_bytes(mutated(8, 17)), std::runtime_error);    // W != 2H
  CHECK_THROWS_AS(slut_from_bytes(mutated(16, 3)), std::runtime_error);    // bad k
  CHECK_THROWS_AS(slut_from_bytes(mutated(20, 1)), std::runtime_error);    // stride mismatch
  CHECK_THROWS_AS(slut_from_bytes(mutated(24, 9)), std::runtime_error);    // out grid mismatch
  CHECK_THROWS_AS(slut_from_bytes(mutated(32, 2)), std::runtime_error);    // mode byte
  CHECK_THROWS_AS(slut_from_bytes(mutated(35, 1)), std::runtime_error);    // padding

  auto truncated = good;
  truncated.pop_back();
  CHECK_THROWS_AS(slut_from_bytes(truncated), std::runtime_error);
  auto extended = good;
  extended.push_back(0);
  CHECK_THROWS_AS(slut_from_bytes(extended), std::runtime_error);
}
