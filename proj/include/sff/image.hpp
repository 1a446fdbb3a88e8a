#pragma once

#include <cstddef>
#include <vector>

namespace sff {

// Row-major grayscale image with 64-bit pixels. Gray levels live in [0,255];
// quantization to bytes happens only when a PGM is written.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<double> pixels; // width*height values, row-major

    Image() = default;
    Image(int w, int h, double fill = 0.0);

    double& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
};

// Row-major grid of unbounded reals: focus maps, depth maps, subbands.
struct FloatGrid {
    int width = 0;
    int height = 0;
    std::vector<double> values; // width*height values, row-major

    FloatGrid() = default;
    FloatGrid(int w, int h, double fill = 0.0);

    double& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
};

// Square kernel with side 2*radius+1, row-major weights.
struct Kernel {
    int radius = 0;
    std::vector<double> weights;

    double at(int dx, int dy) const {
        int side = 2 * radius + 1;
        return weights[static_cast<std::size_t>(dy + radius) * side + (dx + radius)];
    }
};

using ImageStack = std::vector<Image>;
using FocusMap = FloatGrid;
using FocusVolume = std::vector<FloatGrid>;

// Clamp-to-edge index, the border policy used by every spatial filter here.
inline int edge_clamp(int i, int n) { return i < 0 ? 0 : (i >= n ? n - 1 : i); }

} // namespace sff
