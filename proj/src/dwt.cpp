#include "sff/dwt.hpp"

#include <array>
#include <stdexcept>

namespace sff {

namespace {

// 6-tap Daubechies scaling filter (orthonormal, sums to sqrt(2)).
constexpr std::array<double, 6> kLow = {
    0.3326705529500826160, 0.8068915093110925765, 0.4598775021184915701,
    -0.1350110200102545887, -0.0854412738820266617, 0.0352262918857095366,
};

// Quadrature mirror: g[n] = (-1)^n h[5-n].
constexpr std::array<double, 6> kHigh = {
    kLow[5], -kLow[4], kLow[3], -kLow[2], kLow[1], -kLow[0],
};

void require_even(int w, int h) {
    if (w < 6 || h < 6 || (w % 2) != 0 || (h % 2) != 0)
        throw std::invalid_argument("dwt2 needs even dimensions >= 6, got " +
                                    std::to_string(w) + "x" + std::to_string(h));
}

// Periodic analysis of one strided signal: n/2 approximation and detail taps.
void analyze(const double* in, int n, int stride, double* low, double* high, int out_stride) {
    int half = n / 2;
    for (int k = 0; k < half; ++k) {
        double a = 0.0, d = 0.0;
        for (int t = 0; t < 6; ++t) {
            double v = in[static_cast<std::size_t>((2 * k + t) % n) * stride];
            a += kLow[t] * v;
            d += kHigh[t] * v;
        }
        low[static_cast<std::size_t>(k) * out_stride] = a;
        high[static_cast<std::size_t>(k) * out_stride] = d;
    }
}

// Adjoint of analyze; exact inverse because the filter bank is orthonormal.
void synthesize(const double* low, const double* high, int in_stride, int n, double* out, int stride) {
    int half = n / 2;
    for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i) * stride] = 0.0;
    for (int k = 0; k < half; ++k) {
        double a = low[static_cast<std::size_t>(k) * in_stride];
        double d = high[static_cast<std::size_t>(k) * in_stride];
        for (int t = 0; t < 6; ++t)
            out[static_cast<std::size_t>((2 * k + t) % n) * stride] += kLow[t] * a + kHigh[t] * d;
    }
}

} // namespace

DwtSubbands dwt2_forward(const FloatGrid& input) {
    require_even(input.width, input.height);
    const int w = input.width, h = input.height;
    const int hw = w / 2, hh = h / 2;

    // Rows first: low/high half-width intermediates.
    FloatGrid row_low(hw, h), row_high(hw, h);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y)
        analyze(input.values.data() + static_cast<std::size_t>(y) * w, w, 1,
                row_low.values.data() + static_cast<std::size_t>(y) * hw,
                row_high.values.data() + static_cast<std::size_t>(y) * hw, 1);

    DwtSubbands out{FloatGrid(hw, hh), FloatGrid(hw, hh), FloatGrid(hw, hh), FloatGrid(hw, hh)};
#pragma omp parallel for schedule(static)
    for (int x = 0; x < hw; ++x) {
        analyze(row_low.values.data() + x, h, hw, out.ll.values.data() + x, out.lh.values.data() + x, hw);
        analyze(row_high.values.data() + x, h, hw, out.hl.values.data() + x, out.hh.values.data() + x, hw);
    }
    return out;
}

FloatGrid dwt2_inverse(const DwtSubbands& sub) {
    const int hw = sub.ll.width, hh = sub.ll.height;
    for (const FloatGrid* band : {&sub.lh, &sub.hl, &sub.hh})
        if (band->width != hw || band->height != hh)
            throw std::invalid_argument("dwt2_inverse: subband dimensions differ");
    const int w = hw * 2, h = hh * 2;

    FloatGrid row_low(hw, h), row_high(hw, h);
#pragma omp parallel for schedule(static)
    for (int x = 0; x < hw; ++x) {
        synthesize(sub.ll.values.data() + x, sub.lh.values.data() + x, hw, h,
                   row_low.values.data() + x, hw);
        synthesize(sub.hl.values.data() + x, sub.hh.values.data() + x, hw, h,
                   row_high.values.data() + x, hw);
    }

    FloatGrid out(w, h);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y)
        synthesize(row_low.values.data() + static_cast<std::size_t>(y) * hw,
                   row_high.values.data() + static_cast<std::size_t>(y) * hw, 1, w,
                   out.values.data() + static_cast<std::size_t>(y) * w, 1);
    return out;
}

} // namespace sff
