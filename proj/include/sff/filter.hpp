#pragma once

#include "sff/image.hpp"

namespace sff {

// Dense correlation (no kernel flip) with clamp-to-edge borders.
// Output has the input's dimensions. Requires kernel.radius < min(w, h).
FloatGrid convolve(const FloatGrid& grid, const Kernel& kernel);
FloatGrid convolve(const Image& image, const Kernel& kernel);

// Normalized Gaussian, radius = ceil(3*sigma), weights sum to 1.
Kernel gaussian_kernel(double sigma);

// Gaussian-blurred copy of an image; values stay inside the input's range.
Image gaussian_blur(const Image& image, double sigma);

// Affine map [lo, hi] -> [0, 255], clamped. Requires hi > lo.
Image grid_to_gray(const FloatGrid& grid, double lo, double hi);

} // namespace sff
