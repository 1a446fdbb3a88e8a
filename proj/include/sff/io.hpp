#pragma once

#include <filesystem>
#include <string>

#include "sff/image.hpp"

namespace sff {

// Nearest integer with ties to even, independent of the FP rounding mode.
double round_half_even(double v);

// Binary PGM (P5, maxval 255). Reads tolerate comments and loose whitespace;
// writes emit the exact header "P5\n<w> <h>\n255\n".
Image load_pgm(const std::filesystem::path& path);
void save_pgm(const Image& image, const std::filesystem::path& path);

// SFFD float grid: 'S','F','F','D', u32le width, u32le height, then
// width*height IEEE-754 binary64 little-endian values row-major.
FloatGrid load_float_grid(const std::filesystem::path& path);
void save_float_grid(const FloatGrid& grid, const std::filesystem::path& path);

// Serialized forms, used by the writers above and by round-trip tests.
std::string encode_pgm(const Image& image);
std::string encode_float_grid(const FloatGrid& grid);
Image decode_pgm(const std::string& bytes);
FloatGrid decode_float_grid(const std::string& bytes);

// Write-to-temp-then-rename, so readers never observe partial files.
void atomic_write_bytes(const std::filesystem::path& path, const std::string& bytes);
std::string read_file_bytes(const std::filesystem::path& path);

} // namespace sff
