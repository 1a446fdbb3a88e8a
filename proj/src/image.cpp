#include "sff/image.hpp"

#include <stdexcept>

namespace sff {

Image::Image(int w, int h, double fill) : width(w), height(h) {
    if (w <= 0 || h <= 0)
        throw std::invalid_argument("image dimensions must be positive");
    pixels.assign(static_cast<std::size_t>(w) * h, fill);
}

FloatGrid::FloatGrid(int w, int h, double fill) : width(w), height(h) {
    if (w <= 0 || h <= 0)
        throw std::invalid_argument("grid dimensions must be positive");
    values.assign(static_cast<std::size_t>(w) * h, fill);
}

} // namespace sff
