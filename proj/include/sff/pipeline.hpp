#pragma once

#include "sff/focus_ops.hpp"
#include "sff/image.hpp"

namespace sff {

// One focus map per frame. Throws on ragged stacks or K < 2.
FocusVolume build_focus_volume(const ImageStack& stack, OperatorKind kind, const OperatorConfig& cfg);

// Per-pixel argmax over k, ties toward the smallest k. With refine, interior
// peaks get the 3-point parabola vertex, clamped to [k*-1, k*+1].
FloatGrid depth_from_volume(const FocusVolume& volume, bool refine);

// pixel(x, y) = stack[round_half_even(depth(x, y))](x, y).
Image all_in_focus(const ImageStack& stack, const FloatGrid& depth);

// Depth rendered to gray over [0, K-1].
Image depth_to_gray(const FloatGrid& depth, int frame_count);

} // namespace sff
