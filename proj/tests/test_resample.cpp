#include <doctest.h>

#include <cmath>
#include <cstring>

#include "sphconv/bytes.hpp"
#include "sphconv/image_io.hpp"
#include "sphconv/lut.hpp"
#include "sphconv/resample.hpp"
#include "sphconv/rng.hpp"
#include "sphconv/tensor.hpp"
#include "testutil.hpp"

using namespace sphconv;

TEST_CASE("tensor layout is channel-major") {
  Tensor t(2, 3, 4);
  CHECK(t.data.size() == 24);
  t.at(1, 2, 3) = 5.0f;
  CHECK(t.data[(1 * 3 + 2) * 4 + 3] == 5.0f);
  CHECK_THROWS_AS(Tensor(0, 3, 4), std::invalid_argument);
  CHECK_THROWS_AS(Tensor(1, 0, 4), std::invalid_argument);
}

TEST_CASE("TEN1 bytes round-trip bit-exactly") {
  Tensor t(2, 2, 3);
  Rng rng(3);
  for (float& v : t.data) v = rng.symmetric() * 10.0f;
  t.data[0] = -0.0f;
  t.data[1] = 1e-38f;  // subnormal range survives the container

  const auto bytes = tensor_to_bytes(t);
  REQUIRE(bytes.size() == 16 + t.data.size() * 4);
  CHECK(std::memcmp(bytes.data(), "TEN1", 4) == 0);
  CHECK(get_u32le(&bytes[4]) == 2);
  CHECK(get_u32le(&bytes[8]) == 2);
  CHECK(get_u32le(&bytes[12]) == 3);

  const Tensor back = tensor_from_bytes(bytes);
  REQUIRE(back.same_shape(t));
  CHECK(std::memcmp(back.data.data(), t.data.data(), t.data.size() * 4) == 0);

  const std::string path = testutil::scratch_file("roundtrip.ten1");
  save_tensor(path, t);
  const Tensor loaded = load_tensor(path);
  CHECK(std::memcmp(loaded.data.data(), t.data.data(), t.data.size() * 4) == 0);
}

TEST_CASE("TEN1 parser rejects malformed input") {
  Tensor t(1, 1, 2);
  t.data = {1.0f, 2.0f};
  auto good = tensor_to_bytes(t);

  auto bad_magic = good;
  bad_magic[0] = 'X';
  CHECK_THROWS_AS(tensor_from_bytes(bad_magic), std::runtime_error);

  auto truncated = good;
  truncated.pop_back();
  CHECK_THROWS_AS(tensor_from_bytes(truncated), std::runtime_error);

  auto zero_dim = good;
  zero_dim[4] = 0;
  CHECK_THROWS_AS(tensor_from_bytes(zero_dim), std::runtime_error);

  auto with_nan = good;
  with_nan[16] = 0xff;
  with_nan[17] = 0xff;
  with_nan[18] = 0xbf;
  with_nan[19] = 0x7f;
  CHECK_THROWS_AS(tensor_from_bytes(with_nan), std::runtime_error);
}

TEST_CASE("bilinear wraps the seam and interpolates") {
  Tensor t(1, 1, 4);
  t.data = {10.0f, 20.0f, 30.0f, 40.0f};
  CHECK(bilinear_sample(t, 0, 0.0, 0.0) == 10.0f);
  CHECK(bilinear_sample(t, 0, 1.5, 0.0) == 25.0f);
  CHECK(bilinear_sample(t, 0, 3.5, 0.0) == 25.0f);   // between col 3 and col 0
  CHECK(bilinear_sample(t, 0, -0.25, 0.0) == 17.5f); // wraps to 3.75
}

TEST_CASE("bilinear clamps rows so poles replicate") {
  Tensor t(1, 2, 4);
  for (int x = 0; x < 4; ++x) {
    t.at(0, 0, static_cast<std::uint32_t>(x)) = 1.0f;
    t.at(0, 1, static_cast<std::uint32_t>(x)) = 3.0f;
  }
  CHECK(bilinear_sample(t, 0, 0.0, -0.5) == 1.0f);
  CHECK(bilinear_sample(t, 0, 0.0, -10.0) == 1.0f);
  CHECK(bilinear_sample(t, 0, 0.0, 0.5) == 2.0f);
  CHECK(bilinear_sample(t, 0, 0.0, 1.5) == 3.0f);
  CHECK(bilinear_sample(t, 0, 0.0, 99.0) == 3.0f);
}

TEST_CASE("bilinear preserves constants exactly") {
  for (float c : {0.1f, -7.3f, 1e-3f, 255.0f}) {
    Tensor t(1, 4, 8);
    for (float& v : t.data) v = c;
    Rng rng(5);
    for (int n = 0; n < 200; ++n) {
      const double u = rng.uniform() * 16.0 - 4.0;
      const double v = rng.uniform() * 8.0 - 2.0;
      CHECK(bilinear_sample(t, 0, u, v) == c);
    }
  }
}

TEST_CASE("bilinear validates its inputs") {
  Tensor t(1, 2, 4);
  CHECK_THROWS_AS(bilinear_sample(t, 1, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(bilinear_sample(t, 0, std::nan(""), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(bilinear_sample(t, 0, 0.0, INFINITY), std::invalid_argument);
  const Tensor empty;
  CHECK_THROWS_AS(bilinear_sample(empty, 0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("resample expands each cell into a k x k block") {
  const SamplingLut l4 = build_lut(ProjectionConfig(16, 8), KernelSpec(4));
  Rng rng(9);
  const Tensor img = random_tensor(2, 8, 16, rng);
  const Tensor out = resample(img, l4);
  CHECK(out.channels == 2);
  CHECK(out.height == 8);   // out_h * k = 2 * 4
  CHECK(out.width == 16);   // out_w * k = 4 * 4

  // block (I, J) tap (a, b) is the bilinear read of the table entry
  for (int I : {0, 1}) {
    for (int J : {0, 3}) {
      for (int a : {0, 3}) {
        for (int b : {1, 2}) {
          const float want =
              bilinear_sample(img, 1, l4.u_at(I, J, a, b), l4.v_at(I, J, a, b));
          CHECK(out.at(1, static_cast<std::uint32_t>(I * 4 + a),
                       static_cast<std::uint32_t>(J * 4 + b)) == want);
        }
      }
    }
  }

  const SamplingLut l7 = build_lut(ProjectionConfig(16, 8), KernelSpec(7));
  const Tensor out7 = resample(img, l7);
  CHECK(out7.height == 56);   // 8 * 7
  CHECK(out7.width == 112);   // 16 * 7
}

TEST_CASE("resample rejects mismatched input dims") {
  const SamplingLut lut = build_lut(ProjectionConfig(16, 8), KernelSpec(2));
  Rng rng(1);
  const Tensor wrong = random_tensor(1, 16, 32, rng);
  CHECK_THROWS_AS(resample(wrong, lut), std::invalid_argument);
}

TEST_CASE("resample is thread-count invariant") {
  const SamplingLut lut = build_lut(ProjectionConfig(32, 16), KernelSpec(4));
  Rng rng(2);
  const Tensor img = random_tensor(3, 16, 32, rng);
  const Tensor a = resample(img, lut, 1);
  const Tensor b = resample(img, lut, 3);
  CHECK(std::memcmp(a.data.data(), b.data.data(), a.data.size() * 4) == 0);
}

TEST_CASE("pgm save/load round-trips every gray level") {
  Tensor t(1, 2, 128);
  for (std::uint32_t i = 0; i < 256; ++i) {
    t.data[i] = static_cast<float>(i) / 255.0f;
  }
  const std::string path = testutil::scratch_file("gray.pgm");
  save_pgm(path, t);
  const Tensor back = load_image(path);
  REQUIRE(back.same_shape(t));
  for (std::uint32_t i = 0; i < 256; ++i) {
    CHECK(back.data[i] == static_cast<float>(i) / 255.0f);
  }
}

TEST_CASE("pgm quantization clamps and rounds") {
  Tensor t(1, 1, 4);
  t.data = {-0.5f, 1.5f, 0.5f, 0.25f};
  const std::string path = testutil::scratch_file("clamp.pgm");
  save_pgm(path, t);
  const auto bytes = read_file(path);
  const std::size_t raster = bytes.size() - 4;
  CHECK(bytes[raster + 0] == 0);
  CHECK(bytes[raster + 1] == 255);
  CHECK(bytes[raster + 2] == 128);  // 127.5 rounds away from zero
  CHECK(bytes[raster + 3] == 64);
}

TEST_CASE("ppm round-trips color images") {
  Tensor t(3, 2, 2);
  Rng rng(21);
  for (float& v : t.data) v = static_cast<float>(rng.next() % 256) / 255.0f;
  const std::string path = testutil::scratch_file("color.ppm");
  save_ppm(path, t);
  const Tensor back = load_image(path);
  REQUIRE(back.same_shape(t));
  for (std::size_t i = 0; i < t.data.size(); ++i) CHECK(back.data[i] == t.data[i]);

  CHECK_THROWS_AS(save_ppm(testutil::scratch_file("c.ppm"), Tensor(1, 2, 2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(save_pgm(testutil::scratch_file("g.pgm"), Tensor(3, 2, 2)),
                  std::invalid_argument);
}

TEST_CASE("netpbm parser handles comments and rejects junk") {
  const std::string path = testutil::scratch_file("commented.pgm");
  const char header[] = "P5\n# a comment line\n 2 # widths\n2\n255\n";
  std::vector<unsigned char> bytes(header, header + sizeof(header) - 1);
  bytes.insert(bytes.end(), {10, 20, 30, 40});
  write_file(path, bytes);
  const Tensor t = load_image(path);
  CHECK(t.width == 2);
  CHECK(t.height == 2);
  CHECK(t.at(0, 1, 1) == 40.0f / 255.0f);

  // maxval other than 255 is unsupported
  const char big[] = "P5\n2 2\n65535\n";
  std::vector<unsigned char> bad(big, big + sizeof(big) - 1);
  bad.insert(bad.end(), 8, 0);
  write_file(testutil::scratch_file("big.pgm"), bad);
  CHECK_THROWS_AS(load_image(testutil::scratch_file("big.pgm")), std::runtime_error);

  // raster shorter than the header promises
  const char shrt[] = "P5\n4 4\n255\n";
  std::vector<unsigned char> s(shrt, shrt + sizeof(shrt) - 1);
  s.insert(s.end(), 7, 0);
  write_file(testutil::scratch_file("short.pgm"), s);
  CHECK_THROWS_AS(load_image(testutil::scratch_file("short.pgm")), std::runtime_error);

  write_file(testutil::scratch_file("junk.bin"), {1, 2, 3, 4, 5});
  CHECK_THROWS_AS(load_image(testutil::scratch_file("junk.bin")), std::runtime_error);
}
