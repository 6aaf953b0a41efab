#include "sphconv/conv.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "sphconv/bytes.hpp"
#include "sphconv/parallel.hpp"
#include "sphconv/resample.hpp"

namespace sphconv {

namespace {
constexpr char kMagic[4] = {'W', 'G', 'T', '1'};
constexpr std::uint32_t kMaxDim = 1u << 16;

bool supported_kernel(std::uint32_t k) { return k == 2 || k == 4 || k == 7; }
}  // namespace

WeightSet::WeightSet(std::uint32_t out_c, std::uint32_t in_c, std::uint32_t k, bool with_bias)
    : out_channels(out_c), in_channels(in_c), kh(k), kw(k) {
  if (out_c == 0 || in_c == 0) throw std::invalid_argument("weight channels must be positive");
  if (!supported_kernel(k)) throw std::invalid_argument("unsupported kernel size");
  weights.assign(static_cast<std::size_t>(out_c) * in_c * k * k, 0.0f);
  if (with_bias) bias.assign(out_c, 0.0f);
}

std::vector<unsigned char> weights_to_bytes(const WeightSet& w) {
  const std::size_t count = static_cast<std::size_t>(w.out_channels) * w.in_channels * w.kh * w.kw;
  if (w.weights.size() != count) {
    throw std::invalid_argument("weight payload does not match its dimensions");
  }
  if (!w.bias.empty() && w.bias.size() != w.out_channels) {
    throw std::invalid_argument("bias length does not match the output channel count");
  }
  std::vector<unsigned char> out;
  out.reserve(24 + (w.weights.size() + w.bias.size()) * 4);
  out.insert(out.end(), kMagic, kMagic + 4);
  put_u32le(out, w.out_channels);
  put_u32le(out, w.in_channels);
  put_u32le(out, w.kh);
  put_u32le(out, w.kw);
  out.push_back(w.bias.empty() ? 0 : 1);
  out.insert(out.end(), 3, 0);
  for (float v : w.weights) put_f32le(out, v);
  for (float v : w.bias) put_f32le(out, v);
  return out;
}

WeightSet weights_from_bytes(const std::vector<unsigned char>& bytes) {
  if (bytes.size() < 24 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw std::runtime_error("not a WGT1 weight file");
  }
  const std::uint32_t out_c = get_u32le(bytes.data() + 4);
  const std::uint32_t in_c = get_u32le(bytes.data() + 8);
  const std::uint32_t kh = get_u32le(bytes.data() + 12);
  const std::uint32_t kw = get_u32le(bytes.data() + 16);
  const unsigned char flag = bytes[20];
  if (bytes[21] != 0 || bytes[22] != 0 || bytes[23] != 0) {
    throw std::runtime_error("WGT1 reserved bytes must be zero");
  }
  if (flag > 1) throw std::runtime_error("WGT1 bias flag must be 0 or 1");
  if (out_c == 0 || in_c == 0 || out_c > kMaxDim || in_c > kMaxDim) {
    throw std::runtime_error("WGT1 header has unusable channel counts");
  }
  if (kh != kw || !supported_kernel(kh)) {
    throw std::runtime_error("WGT1 kernel must be square with size 2, 4, or 7");
  }
  const std::size_t count = static_cast<std::size_t>(out_c) * in_c * kh * kw;
  const std::size_t bias_count = flag ? out_c : 0;
  if (bytes.size() != 24 + (count + bias_count) * 4) {
    throw std::runtime_error("WGT1 payload size does not match header");
  }
  WeightSet w(out_c, in_c, kh, flag != 0);
  for (std::size_t i = 0; i < count; ++i) {
    const float v = get_f32le(bytes.data() + 24 + i * 4);
    if (!std::isfinite(v)) throw std::runtime_error("WGT1 payload has non-finite values");
    w.weights[i] = v;
  }
  for (std::size_t i = 0; i < bias_count; ++i) {
    const float v = get_f32le(bytes.data() + 24 + (count + i) * 4);
    if (!std::isfinite(v)) throw std::runtime_error("WGT1 payload has non-finite values");
    w.bias[i] = v;
  }
  return w;
}

void save_weights(const std::string& path, const WeightSet& w) {
  write_file(path, weights_to_bytes(w));
}

WeightSet load_weights(const std::string& path) {
  return weights_from_bytes(read_file(path));
}

Tensor conv2d_strided(const Tensor& input, const WeightSet& w, std::uint32_t stride,
                      int threads) {
  if (stride == 0 || stride != w.kh || stride != w.kw) {
    throw std::invalid_argument("stride must equal the kernel size");
  }
  if (input.channels != w.in_channels) {
    throw std::invalid_argument("input channels do not match the weights");
  }
  if (input.height % stride != 0 || input.width % stride != 0) {
    throw std::invalid_argument("input dimensions must be multiples of the stride");
  }
  const std::uint32_t out_h = input.height / stride;
  const std::uint32_t out_w = input.width / stride;
  Tensor out(w.out_channels, out_h, out_w);

  parallel_for(static_cast<int>(out_h), [&](int row) {
    const std::uint32_t i = static_cast<std::uint32_t>(row);
    for (std::uint32_t j = 0; j < out_w; ++j) {
      for (std::uint32_t oc = 0; oc < w.out_channels; ++oc) {
        double acc = 0.0;
        for (std::uint32_t ic = 0; ic < w.in_channels; ++ic) {
          for (std::uint32_t a = 0; a < w.kh; ++a) {
            for (std::uint32_t b = 0; b < w.kw; ++b) {
              acc += static_cast<double>(input.at(ic, i * stride + a, j * stride + b)) *
                     static_cast<double>(w.at(oc, ic, a, b));
            }
          }
        }
        if (!w.bias.empty()) acc += w.bias[oc];
        out.at(oc, i, j) = static_cast<float>(acc);
      }
    }
  }, threads);
  return out;
}

Tensor gather_dot_oracle(const Tensor& input, const SamplingLut& lut, const WeightSet& w,
                         int threads) {
  const std::uint32_t k = static_cast<std::uint32_t>(lut.spec.k);
  if (w.kh != k || w.kw != k) {
    throw std::invalid_argument("weight kernel does not match the sampling table");
  }
  if (input.channels != w.in_channels) {
    throw std::invalid_argument("input channels do not match the weights");
  }
  if (input.width != static_cast<std::uint32_t>(lut.cfg.width) ||
      input.height != static_cast<std::uint32_t>(lut.cfg.height)) {
    throw std::invalid_argument("input dimensions do not match the sampling table");
  }
  Tensor out(w.out_channels, static_cast<std::uint32_t>(lut.out_h),
             static_cast<std::uint32_t>(lut.out_w));

  parallel_for(lut.out_h, [&](int i) {
    std::vector<float> taps(static_cast<std::size_t>(input.channels) * k * k);
    for (int j = 0; j < lut.out_w; ++j) {
      std::size_t n = 0;
      for (std::uint32_t ic = 0; ic < input.channels; ++ic) {
        for (int a = 0; a < lut.spec.k; ++a) {
          for (int b = 0; b < lut.spec.k; ++b) {
            taps[n++] = bilinear_sample(input, ic, lut.u_at(i, j, a, b), lut.v_at(i, j, a, b));
          }
        }
      }
      for (std::uint32_t oc = 0; oc < w.out_channels; ++oc) {
        double acc = 0.0;
        const float* tap = taps.data();
        for (std::uint32_t ic = 0; ic < input.channels; ++ic) {
          for (std::uint32_t a = 0; a < k; ++a) {
            for (std::uint32_t b = 0; b < k; ++b) {
              acc += static_cast<double>(*tap++) * static_cast<double>(w.at(oc, ic, a, b));
            }
          }
        }
        if (!w.bias.empty()) acc += w.bias[oc];
        out.at(oc, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)) =
            static_cast<float>(acc);
      }
    }
  }, threads);
  return out;
}

std::vector<Tensor> cascade_downsample(const Tensor& input,
                                       const std::vector<KernelSpec>& stages,
                                       const std::vector<WeightSet>& stage_weights,
                                       int threads) {
  if (stages.empty()) throw std::invalid_argument("cascade needs at least one stage");
  if (stages.size() != stage_weights.size()) {
    throw std::invalid_argument("cascade needs one weight set per stage");
  }
  if (stages.front().k != 4) throw std::invalid_argument("cascade must open with a k=4 stage");
  for (std::size_t s = 1; s < stages.size(); ++s) {
    if (stages[s].k != 2) throw std::invalid_argument("cascade tail stages must use k=2");
  }

  std::vector<Tensor> outputs;
  outputs.reserve(stages.size());
  const Tensor* cur = &input;
  for (std::size_t s = 0; s < stages.size(); ++s) {
    const std::uint32_t k = static_cast<std::uint32_t>(stages[s].k);
    if (stage_weights[s].kh != k) {
      throw std::invalid_argument("stage weights do not match the stage kernel");
    }
    if (stage_weights[s].in_channels != cur->channels) {
      throw std::invalid_argument("stage weights do not chain with the previous stage");
    }
    const ProjectionConfig cfg(static_cast<int>(cur->width), static_cast<int>(cur->height));
    const SamplingLut lut = build_lut(cfg, stages[s], threads);
    outputs.push_back(conv2d_strided(resample(*cur, lut, threads), stage_weights[s], k, threads));
    cur = &outputs.back();
  }
  return outputs;
}

}  // namespace sphconv
