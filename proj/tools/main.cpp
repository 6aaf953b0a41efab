// Command line for the spherical sampling toolkit: builds SLUT tables,
// resamples panoramas, runs the self-verification suites, applies mask
// fusion, and renders the pole diffusion demo.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or format error.

#include <CLI11.hpp>

#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sphconv/bytes.hpp"
#include "sphconv/conv.hpp"
#include "sphconv/fusion.hpp"
#include "sphconv/geometry.hpp"
#include "sphconv/image_io.hpp"
#include "sphconv/kernel.hpp"
#include "sphconv/lut.hpp"
#include "sphconv/resample.hpp"
#include "sphconv/rng.hpp"
#include "sphconv/tensor.hpp"

namespace {

using namespace sphconv;

SpacingMode mode_from_name(const std::string& name) {
  return name == "uniform" ? SpacingMode::uniform : SpacingMode::azimuth_matched;
}

const char* mode_name(SpacingMode m) {
  return m == SpacingMode::uniform ? "uniform" : "azimuth-matched";
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// .pgm and .ppm get quantized netpbm output, anything else raw TEN1.
void save_by_extension(const std::string& path, const Tensor& t) {
  if (ends_with(path, ".pgm")) {
    save_pgm(path, t);
  } else if (ends_with(path, ".ppm")) {
    save_ppm(path, t);
  } else {
    save_tensor(path, t);
  }
}

// Cyclic shift right: out(c, y, x) = in(c, y, x - cols mod W).
Tensor shift_cols(const Tensor& t, int cols) {
  const int w = static_cast<int>(t.width);
  int s = cols % w;
  if (s < 0) s += w;
  Tensor out(t.channels, t.height, t.width);
  for (std::uint32_t c = 0; c < t.channels; ++c) {
    for (std::uint32_t y = 0; y < t.height; ++y) {
      for (int x = 0; x < w; ++x) {
        out.at(c, y, static_cast<std::uint32_t>((x + s) % w)) =
            t.at(c, y, static_cast<std::uint32_t>(x));
      }
    }
  }
  return out;
}

double max_abs_diff(const Tensor& a, const Tensor& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    worst = std::max(worst, std::abs(static_cast<double>(a.data[i]) - b.data[i]));
  }
  return worst;
}

struct Report {
  bool ok = true;

  void metric(const std::string& name, double err, double tol) {
    const bool pass = err <= tol;
    std::printf("%-34s max err %.3e (tol %g) %s\n", name.c_str(), err, tol,
                pass ? "PASS" : "FAIL");
    if (!pass) ok = false;
  }

  void check(const std::string& name, bool pass, const std::string& detail) {
    std::printf("%-34s %s%s%s\n", name.c_str(), pass ? "PASS" : "FAIL",
                detail.empty() ? "" : "  ", detail.c_str());
    if (!pass) ok = false;
  }
};

// ---- verify suites ---------------------------------------------------

double suite_round_trip(const ProjectionConfig& cfg) {
  double worst = 0.0;
  for (int i = 0; i < cfg.height; ++i) {
    for (int j = 0; j < cfg.width; ++j) {
      const ErpCoord e = dir_to_erp(cfg, pixel_to_dir(cfg, i, j));
      worst = std::max(worst, circular_distance(e.u, j, cfg.width));
      worst = std::max(worst, std::abs(e.v - i));
    }
  }
  return worst;
}

// Rotating the pole to an output center and projecting back must return
// that center. Runs on the 64-bit path, before any f32 quantization.
double suite_center_fidelity(const ProjectionConfig& cfg, const KernelSpec& spec,
                             int out_h, int out_w) {
  double worst = 0.0;
  for (int I = 0; I < out_h; ++I) {
    for (int J = 0; J < out_w; ++J) {
      const auto [crow, ccol] = lut_center_pixel(spec, I, J);
      const Rotation rot = rotation_to_center(pixel_to_dir(cfg, crow, ccol));
      const ErpCoord e = dir_to_erp(cfg, rot.apply({0.0, 0.0, 1.0}));
      worst = std::max(worst, circular_distance(e.u, ccol, cfg.width));
      worst = std::max(worst, std::abs(e.v - crow));
    }
  }
  return worst;
}

// Neighboring output columns must sample `stride` input columns apart at
// identical rows: the table is longitude-equivariant, so there is no seam.
double suite_lut_shift(const SamplingLut& lut) {
  const int k = lut.spec.k;
  const double w = static_cast<double>(lut.cfg.width);
  double worst = 0.0;
  for (int I = 0; I < lut.out_h; ++I) {
    for (int J = 0; J < lut.out_w; ++J) {
      const int Jn = (J + 1) % lut.out_w;
      for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
          const double ue = wrap_coord(lut.u_at(I, J, a, b) + lut.spec.stride, w);
          worst = std::max(worst, circular_distance(lut.u_at(I, Jn, a, b), ue, w));
          worst = std::max(worst,
                           std::abs(static_cast<double>(lut.v_at(I, Jn, a, b)) -
                                    lut.v_at(I, J, a, b)));
        }
      }
    }
  }
  return worst;
}

// Tap-to-center great-circle distance must equal the template ring radius:
// moving the kernel around the sphere is a rigid rotation.
double suite_isometry(const ProjectionConfig& cfg, const KernelSpec& spec,
                      int out_h, int out_w, int samples, Rng& rng) {
  const KernelTemplate tmpl = build_template(cfg, spec);
  const int taps = spec.k * spec.k;
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const int I = static_cast<int>(rng.next() % static_cast<std::uint64_t>(out_h));
    const int J = static_cast<int>(rng.next() % static_cast<std::uint64_t>(out_w));
    const int t = static_cast<int>(rng.next() % static_cast<std::uint64_t>(taps));
    const auto [crow, ccol] = lut_center_pixel(spec, I, J);
    const Vec3 center = pixel_to_dir(cfg, crow, ccol);
    const Vec3& p = tmpl.points[static_cast<std::size_t>(t)];
    const Vec3 d = rotation_to_center(center).apply(p);
    const double expected = std::atan2(std::hypot(p.x, p.y), p.z);
    worst = std::max(worst, std::abs(great_circle_distance(center, d) - expected));
  }
  return worst;
}

double suite_oracle(const SamplingLut& lut, int pairs, std::uint64_t seed) {
  const std::uint32_t k = static_cast<std::uint32_t>(lut.spec.k);
  const std::uint32_t h = static_cast<std::uint32_t>(lut.cfg.height);
  const std::uint32_t w = static_cast<std::uint32_t>(lut.cfg.width);
  double worst = 0.0;
  for (int p = 0; p < pairs; ++p) {
    Rng rng(seed + static_cast<std::uint64_t>(p));
    const Tensor input = random_tensor(2, h, w, rng);
    const WeightSet weights = random_weights(2, 2, k, p % 2 == 1, rng);
    const Tensor via_conv = conv2d_strided(resample(input, lut), weights, k);
    const Tensor via_gather = gather_dot_oracle(input, lut, weights);
    worst = std::max(worst, max_abs_diff(via_conv, via_gather));
  }
  return worst;
}

double suite_longitude_equivariance(const SamplingLut& lut, std::uint64_t seed) {
  const std::uint32_t k = static_cast<std::uint32_t>(lut.spec.k);
  Rng rng(seed);
  const Tensor input = random_tensor(2, static_cast<std::uint32_t>(lut.cfg.height),
                                     static_cast<std::uint32_t>(lut.cfg.width), rng);
  const WeightSet weights = random_weights(2, 2, k, false, rng);
  const Tensor base = conv2d_strided(resample(input, lut), weights, k);
  const Tensor shifted =
      conv2d_strided(resample(shift_cols(input, lut.spec.stride), lut), weights, k);
  return max_abs_diff(shifted, shift_cols(base, 1));
}

// The k=7 template keeps a tap on the pole, so the stored center tap must
// land on its own pixel. Fixed 16x8 table: small enough that the f32
// coordinates carry the identity without rounding past the tolerance.
double suite_pole_tap(SpacingMode mode) {
  const ProjectionConfig cfg(16, 8);
  const SamplingLut lut = build_lut(cfg, KernelSpec(7, mode));
  double worst = 0.0;
  for (int I = 0; I < lut.out_h; ++I) {
    for (int J = 0; J < lut.out_w; ++J) {
      worst = std::max(worst, circular_distance(lut.u_at(I, J, 3, 3), J, 16.0));
      worst = std::max(worst, std::abs(static_cast<double>(lut.v_at(I, J, 3, 3)) - I));
    }
  }
  return worst;
}

// Parses the file and byte-compares it against a fresh deterministic
// rebuild; any flipped bit is located down to the tap it corrupts.
bool check_lut_integrity(const std::string& path, std::string& detail) {
  const std::vector<unsigned char> bytes = read_file(path);
  std::optional<SamplingLut> parsed;
  try {
    parsed = slut_from_bytes(bytes);
  } catch (const std::exception& e) {
    detail = e.what();
    return false;
  }
  const SamplingLut& lut = *parsed;
  const std::vector<unsigned char> ref = slut_to_bytes(build_lut(lut.cfg, lut.spec));
  if (ref.size() != bytes.size()) {
    detail = "size mismatch";
    return false;
  }
  std::size_t off = 0;
  while (off < ref.size() && ref[off] == bytes[off]) ++off;
  if (off == ref.size()) {
    detail = "byte-identical rebuild";
    return true;
  }
  char buf[224];
  if (off < kSlutHeaderSize) {
    std::snprintf(buf, sizeof(buf), "header byte %zu differs", off);
    detail = buf;
    return false;
  }
  const std::size_t rec = (off - kSlutHeaderSize) / 8;
  const std::size_t lane = ((off - kSlutHeaderSize) % 8) / 4;
  const std::size_t k = static_cast<std::size_t>(lut.spec.k);
  const std::size_t b = rec % k;
  const std::size_t a = (rec / k) % k;
  const std::size_t J = rec / (k * k) % static_cast<std::size_t>(lut.out_w);
  const std::size_t I = rec / (k * k) / static_cast<std::size_t>(lut.out_w);
  const std::size_t at = kSlutHeaderSize + rec * 8 + lane * 4;
  std::snprintf(buf, sizeof(buf),
                "first mismatch at tap I=%zu J=%zu a=%zu b=%zu (%s): stored %.9g expected %.9g",
                I, J, a, b, lane == 0 ? "u" : "v", get_f32le(bytes.data() + at),
                get_f32le(ref.data() + at));
  detail = buf;
  return false;
}

// ---- subcommands ------------------------------------------------------

int run_gen_lut(int width, int height, int kernel, SpacingMode mode,
                const std::string& out) {
  const ProjectionConfig cfg(width, height);
  const KernelSpec spec(kernel, mode);
  const SamplingLut lut = build_lut(cfg, spec);
  const std::vector<unsigned char> bytes = slut_to_bytes(lut);
  write_file(out, bytes);
  std::printf("slut w=%d h=%d k=%d stride=%d mode=%s out_w=%d out_h=%d taps=%zu "
              "bytes=%zu fnv1a64=%016" PRIx64 "\n",
              cfg.width, cfg.height, spec.k, spec.stride, mode_name(spec.mode),
              lut.out_w, lut.out_h, lut.coords.size() / 2, bytes.size(),
              fnv1a64(bytes.data(), bytes.size()));
  return 0;
}

int run_resample(const std::string& input, const std::string& lut_path,
                 const std::string& out) {
  const SamplingLut lut = load_slut(lut_path);
  const Tensor img = load_image(input);
  const Tensor res = resample(img, lut);
  save_by_extension(out, res);
  std::printf("resample k=%d: c=%u h=%u w=%u -> h=%u w=%u\n", lut.spec.k, img.channels,
              img.height, img.width, res.height, res.width);
  return 0;
}

int run_verify(int width, int height, int kernel, SpacingMode mode, std::uint64_t seed,
               const std::string& lut_path) {
  Report rep;
  const ProjectionConfig cfg(width, height);
  char name[96];
  std::snprintf(name, sizeof(name), "round-trip %dx%d", width, height);
  rep.metric(name, suite_round_trip(cfg), 1e-9);

  std::vector<int> kernels;
  if (kernel != 0) {
    kernels.push_back(kernel);
  } else {
    kernels = {2, 4, 7};
  }
  // The oracle pass is the expensive one; thin it out on big grids.
  const int pairs = width <= 128 ? 20 : 3;

  for (int k : kernels) {
    const KernelSpec spec(k, mode);
    const SamplingLut lut = build_lut(cfg, spec);
    Rng rng(seed + static_cast<std::uint64_t>(k) * 101);
    const auto label = [k, &name](const char* what) -> const char* {
      std::snprintf(name, sizeof(name), "k=%d %s", k, what);
      return name;
    };
    rep.metric(label("center fidelity"), suite_center_fidelity(cfg, spec, lut.out_h, lut.out_w),
               1e-9);
    rep.metric(label("table column shift"), suite_lut_shift(lut), 1e-4);
    rep.metric(label("rotation isometry"),
               suite_isometry(cfg, spec, lut.out_h, lut.out_w, 2000, rng), 1e-12);
    rep.metric(label("oracle equivalence"), suite_oracle(lut, pairs, seed), 1e-4);
    rep.metric(label("longitude equivariance"), suite_longitude_equivariance(lut, seed),
               1e-4);
    if (k == 7) rep.metric("k=7 pole tap (16x8)", suite_pole_tap(mode), 1e-6);
  }

  if (!lut_path.empty()) {
    std::string detail;
    const bool ok = check_lut_integrity(lut_path, detail);
    rep.check("table file integrity", ok, detail);
  }
  std::printf("verify: %s\n", rep.ok ? "PASS" : "FAIL");
  return rep.ok ? 0 : 1;
}

int run_fuse(const std::string& input, const std::string& masks, const std::string& out,
             const std::string& labels) {
  const Tensor sem = load_image(input);
  const Tensor m = load_image(masks);
  const Tensor fused = fuse(sem, m);
  save_by_extension(out, fused);
  std::printf("fuse: c=%u h=%u w=%u\n", fused.channels, fused.height, fused.width);
  if (!labels.empty()) {
    save_label_pgm(labels, argmax_labels(fused));
    std::printf("labels -> %s\n", labels.c_str());
  }
  return 0;
}

int run_diffusion_demo(const std::string& input, const std::string& out_prefix,
                       std::uint64_t seed, SpacingMode mode) {
  const Tensor img = load_image(input);
  const ProjectionConfig cfg(static_cast<int>(img.width), static_cast<int>(img.height));
  if (cfg.height % 32 != 0) {
    throw std::invalid_argument("diffusion demo needs a height divisible by 32");
  }
  const std::vector<KernelSpec> stages{KernelSpec(4, mode), KernelSpec(2, mode),
                                       KernelSpec(2, mode), KernelSpec(2, mode)};
  std::vector<WeightSet> weights;
  Rng rng(seed);
  std::uint32_t in_c = img.channels;
  for (const KernelSpec& st : stages) {
    WeightSet w = random_weights(8, in_c, static_cast<std::uint32_t>(st.k), false, rng);
    const float scale = 1.0f / (static_cast<float>(st.k) * std::sqrt(static_cast<float>(in_c)));
    for (float& v : w.weights) v *= scale;
    weights.push_back(std::move(w));
    in_c = 8;
  }
  const std::vector<Tensor> feats = cascade_downsample(img, stages, weights);
  for (std::size_t s = 0; s < feats.size(); ++s) {
    const Tensor& f = feats[s];
    Tensor gray(1, f.height, f.width);
    float lo = f.at(0, 0, 0);
    float hi = lo;
    for (std::uint32_t y = 0; y < f.height; ++y) {
      for (std::uint32_t x = 0; x < f.width; ++x) {
        lo = std::min(lo, f.at(0, y, x));
        hi = std::max(hi, f.at(0, y, x));
      }
    }
    const float range = hi - lo;
    for (std::uint32_t y = 0; y < f.height; ++y) {
      for (std::uint32_t x = 0; x < f.width; ++x) {
        gray.at(0, y, x) = range > 0.0f ? (f.at(0, y, x) - lo) / range : 0.0f;
      }
    }
    const std::string path = out_prefix + "stage" + std::to_string(s + 1) + ".pgm";
    save_pgm(path, gray);
    std::printf("stage %zu: h=%u w=%u -> %s\n", s + 1, f.height, f.width, path.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spherical sampling tables for equirectangular panoramas"};
  app.require_subcommand(1);
  const std::vector<std::string> mode_names{"uniform", "azimuth-matched"};

  int gl_width = 0, gl_height = 0, gl_kernel = 0;
  std::string gl_mode = "azimuth-matched", gl_out;
  CLI::App* gen = app.add_subcommand("gen-lut", "Build a sampling table (SLUT file)");
  gen->add_option("--width", gl_width, "panorama width, 2x height")->required();
  gen->add_option("--height", gl_height, "panorama height")->required();
  gen->add_option("--kernel", gl_kernel, "kernel size")
      ->required()
      ->check(CLI::IsMember({2, 4, 7}));
  gen->add_option("--spacing-mode", gl_mode)->check(CLI::IsMember(mode_names));
  gen->add_option("--out", gl_out, "output SLUT path")->required();

  std::string rs_input, rs_lut, rs_out;
  CLI::App* res = app.add_subcommand("resample", "Expand an image through a table");
  res->add_option("--input", rs_input, "PGM/PPM/TEN1 input")->required();
  res->add_option("--lut", rs_lut, "SLUT file")->required();
  res->add_option("--out", rs_out, "output path (.pgm/.ppm/TEN1)")->required();

  int vf_width = 64, vf_height = 32, vf_kernel = 0;
  std::string vf_mode = "azimuth-matched", vf_lut;
  std::uint64_t vf_seed = 1;
  CLI::App* ver = app.add_subcommand("verify", "Run the self-check suites");
  ver->add_option("--width", vf_width, "grid width (default 64)");
  ver->add_option("--height", vf_height, "grid height (default 32)");
  ver->add_option("--kernel", vf_kernel, "restrict to one kernel")
      ->check(CLI::IsMember({2, 4, 7}));
  ver->add_option("--spacing-mode", vf_mode)->check(CLI::IsMember(mode_names));
  ver->add_option("--seed", vf_seed, "seed for the random instances");
  ver->add_option("--lut", vf_lut, "also check this SLUT file against a rebuild");

  std::string fu_input, fu_masks, fu_out, fu_labels;
  CLI::App* fus = app.add_subcommand("fuse", "Mask-attention fusion of score maps");
  fus->add_option("--input", fu_input, "semantic scores (TEN1/PGM/PPM)")->required();
  fus->add_option("--masks", fu_masks, "attention masks, same shape")->required();
  fus->add_option("--out", fu_out, "fused output path")->required();
  fus->add_option("--labels", fu_labels, "optional argmax label PGM");

  std::string df_input, df_out;
  std::uint64_t df_seed = 1;
  std::string df_mode = "azimuth-matched";
  CLI::App* dif = app.add_subcommand("diffusion-demo",
                                     "Four-stage downsampling cascade, PGM per stage");
  dif->add_option("--input", df_input, "panorama (height divisible by 32)")->required();
  dif->add_option("--out", df_out, "output path prefix")->required();
  dif->add_option("--seed", df_seed, "seed for the stage weights");
  dif->add_option("--spacing-mode", df_mode)->check(CLI::IsMember(mode_names));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      return run_gen_lut(gl_width, gl_height, gl_kernel, mode_from_name(gl_mode), gl_out);
    }
    if (res->parsed()) return run_resample(rs_input, rs_lut, rs_out);
    if (ver->parsed()) {
      return run_verify(vf_width, vf_height, vf_kernel, mode_from_name(vf_mode), vf_seed,
                        vf_lut);
    }
    if (fus->parsed()) return run_fuse(fu_input, fu_masks, fu_out, fu_labels);
    if (dif->parsed()) {
      return run_diffusion_demo(df_input, df_out, df_seed, mode_from_name(df_mode));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
