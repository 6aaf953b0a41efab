#include "sphconv/lut.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

#include "sphconv/bytes.hpp"
#include "sphconv/parallel.hpp"

namespace sphconv {

std::pair<double, double> lut_center_pixel(const KernelSpec& spec, int I, int J) {
  if (spec.k == 7) return {static_cast<double>(I), static_cast<double>(J)};
  const double off = (spec.k - 1) / 2.0;
  return {spec.k * I + off, spec.k * J + off};
}

std::vector<Vec3> tap_directions(const ProjectionConfig& cfg, const KernelTemplate& tmpl,
                                 double center_row, double center_col) {
  const Rotation rot = rotation_to_center(pixel_to_dir(cfg, center_row, center_col));
  std::vector<Vec3> dirs;
  dirs.reserve(tmpl.points.size());
  for (const Vec3& p : tmpl.points) dirs.push_back(rot.apply(p));
  return dirs;
}

SamplingLut build_lut(const ProjectionConfig& cfg, const KernelSpec& spec, int threads) {
  if (spec.k != 7 && (cfg.width % spec.k != 0 || cfg.height % spec.k != 0)) {
    throw std::invalid_argument("build_lut: image " + std::to_string(cfg.width) + "x" +
                                std::to_string(cfg.height) + " not divisible into " +
                                std::to_string(spec.k) + "x" + std::to_string(spec.k) +
                                " blocks");
  }
  const KernelTemplate tmpl = build_template(cfg, spec);
  const int k = spec.k;
  const int out_w = cfg.width / spec.stride;
  const int out_h = cfg.height / spec.stride;

  SamplingLut lut{cfg, spec, out_w, out_h, {}};
  lut.coords.resize(static_cast<std::size_t>(out_h) * out_w * k * k * 2);

  const float wf = static_cast<float>(cfg.width);
  const float v_min = -0.5f;
  const float v_max = static_cast<float>(cfg.height) - 0.5f;

  parallel_for(
      out_h,
      [&](int I) {
        for (int J = 0; J < out_w; ++J) {
          const auto [crow, ccol] = lut_center_pixel(spec, I, J);
          const Rotation rot = rotation_to_center(pixel_to_dir(cfg, crow, ccol));
          float* rec = &lut.coords[lut.tap_index(I, J, 0, 0)];
          for (const Vec3& p : tmpl.points) {
            const ErpCoord e = dir_to_erp(cfg, rot.apply(p));
            float u = static_cast<float>(e.u);
            if (u >= wf) u -= wf;  // f32 rounding can land exactly on W
            float v = std::clamp(static_cast<float>(e.v), v_min, v_max);
            *rec++ = u;
            *rec++ = v;
          }
        }
      },
      threads);
  return lut;
}

std::vector<unsigned char> slut_to_bytes(const SamplingLut& lut) {
  static constexpr char kMagic[4] = {'S', 'L', 'U', 'T'};
  std::vector<unsigned char> out;
  out.reserve(kSlutHeaderSize + lut.coords.size() * 4);
  out.insert(out.end(), kMagic, kMagic + 4);
  put_u32le(out, kSlutVersion);
  put_u32le(out, static_cast<std::uint32_t>(lut.cfg.width));
  put_u32le(out, static_cast<std::uint32_t>(lut.cfg.height));
  put_u32le(out, static_cast<std::uint32_t>(lut.spec.k));
  put_u32le(out, static_cast<std::uint32_t>(lut.spec.stride));
  put_u32le(out, static_cast<std::uint32_t>(lut.out_w));
  put_u32le(out, static_cast<std::uint32_t>(lut.out_h));
  out.push_back(static_cast<unsigned char>(lut.spec.mode));
  out.insert(out.end(), 7, 0);
  for (float c : lut.coords) put_f32le(out, c);
  return out;
}

SamplingLut slut_from_bytes(const std::vector<unsigned char>& bytes) {
  if (bytes.size() < kSlutHeaderSize || std::memcmp(bytes.data(), "SLUT", 4) != 0) {
    throw std::runtime_error("slut: missing SLUT magic");
  }
  const std::uint32_t version = get_u32le(&bytes[4]);
  if (version != kSlutVersion) {
    throw std::runtime_error("slut: unsupported version " + std::to_string(version));
  }
  const std::uint32_t w = get_u32le(&bytes[8]);
  const std::uint32_t h = get_u32le(&bytes[12]);
  const std::uint32_t k = get_u32le(&bytes[16]);
  const std::uint32_t stride = get_u32le(&bytes[20]);
  const std::uint32_t out_w = get_u32le(&bytes[24]);
  const std::uint32_t out_h = get_u32le(&bytes[28]);
  const unsigned char mode_byte = bytes[32];
  for (int i = 33; i < 40; ++i) {
    if (bytes[static_cast<std::size_t>(i)] != 0) {
      throw std::runtime_error("slut: nonzero padding byte");
    }
  }
  if (mode_byte > 1) {
    throw std::runtime_error("slut: bad spacing mode byte");
  }
  if (w > (1u << 24) || h > (1u << 24)) {
    throw std::runtime_error("slut: implausible image dimensions");
  }
  if (h == 0 || w != 2 * h) {
    throw std::runtime_error("slut: width must be twice the height");
  }

  ProjectionConfig cfg(static_cast<int>(w), static_cast<int>(h));
  if (k != 2 && k != 4 && k != 7) {
    throw std::runtime_error("slut: bad kernel size " + std::to_string(k));
  }
  KernelSpec spec(static_cast<int>(k), static_cast<SpacingMode>(mode_byte));
  if (stride != static_cast<std::uint32_t>(spec.stride)) {
    throw std::runtime_error("slut: stride field inconsistent with kernel size");
  }
  if (out_w != w / stride || out_h != h / stride) {
    throw std::runtime_error("slut: output grid inconsistent with header dims");
  }

  const std::size_t n_floats = static_cast<std::size_t>(out_h) * out_w * k * k * 2;
  if (bytes.size() != kSlutHeaderSize + n_floats * 4) {
    throw std::runtime_error("slut: payload size mismatch");
  }
  SamplingLut lut{cfg, spec, static_cast<int>(out_w), static_cast<int>(out_h), {}};
  lut.coords.resize(n_floats);
  const unsigned char* p = bytes.data() + kSlutHeaderSize;
  for (std::size_t i = 0; i < n_floats; ++i, p += 4) {
    lut.coords[i] = get_f32le(p);
  }
  return lut;
}

void save_slut(const SamplingLut& lut, const std::string& path) {
  write_file(path, slut_to_bytes(lut));
}

SamplingLut load_slut(const std::string& path) {
  return slut_from_bytes(read_file(path));
}

}  // namespace sphconv
