#pragma once

#include "sff/image.hpp"

namespace sff {

// One-level separable 2D wavelet decomposition, each subband (w/2)x(h/2).
// ll is the coarse approximation; lh/hl/hh carry the detail energy.
struct DwtSubbands {
    FloatGrid ll, lh, hl, hh;
};

// Orthonormal 6-tap Daubechies filter bank with periodic extension.
// Both dimensions must be even and >= 6.
DwtSubbands dwt2_forward(const FloatGrid& input);

// Exact inverse of dwt2_forward (adjoint of an orthonormal transform).
FloatGrid dwt2_inverse(const DwtSubbands& subbands);

} // namespace sff
