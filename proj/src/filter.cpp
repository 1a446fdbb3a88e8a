#include "sff/filter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sff {

namespace {

void convolve_raw(const double* in, int width, int height, const Kernel& kernel, double* out) {
    if (static_cast<int>(kernel.weights.size()) != (2 * kernel.radius + 1) * (2 * kernel.radius + 1))
        throw std::invalid_argument("kernel weight count does not match its radius");
    if (kernel.radius >= std::min(width, height))
        throw std::invalid_argument("kernel radius " + std::to_string(kernel.radius) +
                                    " too large for " + std::to_string(width) + "x" + std::to_string(height));
    const int r = kernel.radius;
    const int side = 2 * r + 1;
#pragma omp parallel for schedule(static)
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            double acc = 0.0;
            for (int dy = -r; dy <= r; ++dy) {
                const double* row = in + static_cast<std::size_t>(edge_clamp(y + dy, height)) * width;
                const double* w = kernel.weights.data() + static_cast<std::size_t>(dy + r) * side;
                for (int dx = -r; dx <= r; ++dx)
                    acc += w[dx + r] * row[edge_clamp(x + dx, width)];
            }
            out[static_cast<std::size_t>(y) * width + x] = acc;
        }
    }
}

} // namespace

FloatGrid convolve(const FloatGrid& grid, const Kernel& kernel) {
    FloatGrid out(grid.width, grid.height);
    convolve_raw(grid.values.data(), grid.width, grid.height, kernel, out.values.data());
    return out;
}

FloatGrid convolve(const Image& image, const Kernel& kernel) {
    FloatGrid out(image.width, image.height);
    convolve_raw(image.pixels.data(), image.width, image.height, kernel, out.values.data());
    return out;
}

Kernel gaussian_kernel(double sigma) {
    if (!(sigma > 0.0))
        throw std::domain_error("gaussian sigma must be positive");
    Kernel kernel;
    kernel.radius = static_cast<int>(std::ceil(3.0 * sigma));
    int side = 2 * kernel.radius + 1;
    kernel.weights.resize(static_cast<std::size_t>(side) * side);
    double sum = 0.0;
    for (int dy = -kernel.radius; dy <= kernel.radius; ++dy)
        for (int dx = -kernel.radius; dx <= kernel.radius; ++dx) {
            double w = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
            kernel.weights[static_cast<std::size_t>(dy + kernel.radius) * side + (dx + kernel.radius)] = w;
            sum += w;
        }
    for (double& w : kernel.weights)
        w /= sum;
    return kernel;
}

Image gaussian_blur(const Image& image, double sigma) {
    FloatGrid blurred = convolve(image, gaussian_kernel(sigma));
    Image out(image.width, image.height);
    out.pixels = std::move(blurred.values);
    return out;
}

Image grid_to_gray(const FloatGrid& grid, double lo, double hi) {
    if (!(hi > lo))
        throw std::domain_error("grid_to_gray needs hi > lo");
    Image out(grid.width, grid.height);
    for (std::size_t i = 0; i < grid.values.size(); ++i) {
        double v = (grid.values[i] - lo) * 255.0 / (hi - lo);
        out.pixels[i] = std::clamp(v, 0.0, 255.0);
    }
    return out;
}

} // namespace sff
