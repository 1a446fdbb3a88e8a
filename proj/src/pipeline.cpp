#include "sff/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sff/filter.hpp"
#include "sff/io.hpp"

namespace sff {

FocusVolume build_focus_volume(const ImageStack& stack, OperatorKind kind, const OperatorConfig& cfg) {
    if (stack.size() < 2)
        throw std::invalid_argument("focus volume needs at least 2 frames");
    for (const Image& frame : stack)
        if (frame.width != stack.front().width || frame.height != stack.front().height)
            throw std::invalid_argument("ragged stack: frame dimensions differ");
    FocusVolume volume;
    volume.reserve(stack.size());
    for (int k = 0; k < static_cast<int>(stack.size()); ++k)
        volume.push_back(focus_map(stack, k, kind, cfg));
    return volume;
}

FloatGrid depth_from_volume(const FocusVolume& volume, bool refine) {
    if (volume.size() < 2)
        throw std::invalid_argument("depth extraction needs at least 2 focus maps");
    const int w = volume.front().width, h = volume.front().height;
    for (const FloatGrid& map : volume)
        if (map.width != w || map.height != h)
            throw std::invalid_argument("focus maps differ in size");
    const int frames = static_cast<int>(volume.size());
    FloatGrid depth(w, h);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            int best = 0;
            double best_value = volume[0].at(x, y);
            for (int k = 1; k < frames; ++k) {
                double v = volume[static_cast<std::size_t>(k)].at(x, y);
                if (v > best_value) { // strict: ties keep the smallest k
                    best_value = v;
                    best = k;
                }
            }
            double result = best;
            if (refine && best > 0 && best < frames - 1) {
                double lower = volume[static_cast<std::size_t>(best - 1)].at(x, y);
                double upper = volume[static_cast<std::size_t>(best + 1)].at(x, y);
                double curvature = lower - 2.0 * best_value + upper;
                if (curvature < 0.0) {
                    double vertex = best + (lower - upper) / (2.0 * curvature);
                    result = std::clamp(vertex, static_cast<double>(best - 1), static_cast<double>(best + 1));
                }
            }
            depth.at(x, y) = result;
        }
    return depth;
}

Image all_in_focus(const ImageStack& stack, const FloatGrid& depth) {
    if (stack.empty())
        throw std::invalid_argument("all_in_focus needs a non-empty stack");
    const int w = stack.front().width, h = stack.front().height;
    if (depth.width != w || depth.height != h)
        throw std::invalid_argument("depth map dimensions disagree with the stack");
    const int frames = static_cast<int>(stack.size());
    Image out(w, h);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            int k = static_cast<int>(round_half_even(depth.at(x, y)));
            out.at(x, y) = stack[static_cast<std::size_t>(edge_clamp(k, frames))].at(x, y);
        }
    return out;
}

Image depth_to_gray(const FloatGrid& depth, int frame_count) {
    if (frame_count < 2)
        throw std::invalid_argument("depth_to_gray needs at least 2 frames");
    return grid_to_gray(depth, 0.0, static_cast<double>(frame_count - 1));
}

} // namespace sff
