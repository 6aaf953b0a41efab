#pragma once

#include <string>

#include "sphconv/tensor.hpp"

namespace sphconv {

// Binary netpbm, maxval 255 only. Pixels map to floats as value/255;
// saving clamps to [0,1] and rounds to the nearest byte.
void save_pgm(const std::string& path, const Tensor& t);  // 1 channel
void save_ppm(const std::string& path, const Tensor& t);  // 3 channels

// Dispatches on the leading magic: P5, P6, or TEN1.
Tensor load_image(const std::string& path);

}  // namespace sphconv
