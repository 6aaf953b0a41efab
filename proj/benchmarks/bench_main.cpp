#include <benchmark/benchmark.h>

#include <cstdint>

#include "sphconv/conv.hpp"
#include "sphconv/kernel.hpp"
#include "sphconv/lut.hpp"
#include "sphconv/resample.hpp"
#include "sphconv/rng.hpp"
#include "sphconv/tensor.hpp"

namespace {

using namespace sphconv;

void BM_BuildLut(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const ProjectionConfig cfg(512, 256);
  for (auto _ : state) {
    SamplingLut lut = build_lut(cfg, KernelSpec(k));
    benchmark::DoNotOptimize(lut.coords.data());
  }
}
BENCHMARK(BM_BuildLut)->Arg(2)->Arg(4)->Arg(7);

void BM_Bilinear(benchmark::State& state) {
  Rng rng(11);
  const Tensor img = random_tensor(1, 256, 512, rng);
  double u = 17.3, v = 201.9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bilinear_sample(img, 0, u, v));
    u += 0.37;
    if (u >= 512.0) u -= 512.0;
  }
}
BENCHMARK(BM_Bilinear);

void BM_Resample(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const SamplingLut lut = build_lut(ProjectionConfig(512, 256), KernelSpec(k));
  Rng rng(12);
  const Tensor img = random_tensor(2, 256, 512, rng);
  for (auto _ : state) {
    Tensor out = resample(img, lut);
    benchmark::DoNotOptimize(out.data.data());
  }
}
BENCHMARK(BM_Resample)->Arg(2)->Arg(4)->Arg(7);

void BM_Conv(benchmark::State& state) {
  const std::uint32_t k = static_cast<std::uint32_t>(state.range(0));
  const SamplingLut lut =
      build_lut(ProjectionConfig(512, 256), KernelSpec(static_cast<int>(k)));
  Rng rng(13);
  const Tensor img = random_tensor(2, 256, 512, rng);
  const Tensor expanded = resample(img, lut);
  const WeightSet w = random_weights(4, 2, k, true, rng);
  for (auto _ : state) {
    Tensor out = conv2d_strided(expanded, w, k);
    benchmark::DoNotOptimize(out.data.data());
  }
}
BENCHMARK(BM_Conv)->Arg(2)->Arg(4)->Arg(7);

void BM_GatherDot(benchmark::State& state) {
  const std::uint32_t k = static_cast<std::uint32_t>(state.range(0));
  const SamplingLut lut =
      build_lut(ProjectionConfig(512, 256), KernelSpec(static_cast<int>(k)));
  Rng rng(14);
  const Tensor img = random_tensor(2, 256, 512, rng);
  const WeightSet w = random_weights(4, 2, k, true, rng);
  for (auto _ : state) {
    Tensor out = gather_dot_oracle(img, lut, w);
    benchmark::DoNotOptimize(out.data.data());
  }
}
BENCHMARK(BM_GatherDot)->Arg(2)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
