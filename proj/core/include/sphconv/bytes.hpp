#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

// Little-endian packing helpers and whole-file I/O.

namespace sphconv {

inline void put_u32le(std::vector<unsigned char>& out, std::uint32_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 16) & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 24) & 0xff));
}

inline std::uint32_t get_u32le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

inline void put_f32le(std::vector<unsigned char>& out, float v) {
  put_u32le(out, std::bit_cast<std::uint32_t>(v));
}

inline float get_f32le(const unsigned char* p) {
  return std::bit_cast<float>(get_u32le(p));
}

// Reads/writes a whole binary file; throws std::runtime_error on failure.
std::vector<unsigned char> read_file(const std::string& path);
void write_file(const std::string& path, const std::vector<unsigned char>& bytes);

// FNV-1a 64-bit hash, used for file summaries.
std::uint64_t fnv1a64(const unsigned char* data, std::size_t n);

}  // namespace sphconv
