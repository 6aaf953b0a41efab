#pragma once

#include <cstdint>

#include "sphconv/conv.hpp"
#include "sphconv/tensor.hpp"

namespace sphconv {

// xorshift64* with a splitmix64-scrambled seed. Deterministic across
// platforms, which the reproducibility checks rely on.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    state_ = z ^ (z >> 31);
    if (state_ == 0) state_ = 0x9e3779b97f4a7c15ull;
  }

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545f4914f6cdd1dull;
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [-1, 1).
  float symmetric() { return static_cast<float>(uniform() * 2.0 - 1.0); }

 private:
  std::uint64_t state_;
};

inline Tensor random_tensor(std::uint32_t c, std::uint32_t h, std::uint32_t w, Rng& rng) {
  Tensor t(c, h, w);
  for (float& v : t.data) v = rng.symmetric();
  return t;
}

inline WeightSet random_weights(std::uint32_t out_c, std::uint32_t in_c, std::uint32_t k,
                                bool with_bias, Rng& rng) {
  WeightSet w(out_c, in_c, k, with_bias);
  for (float& v : w.weights) v = rng.symmetric();
  for (float& v : w.bias) v = rng.symmetric();
  return w;
}

}  // namespace sphconv
