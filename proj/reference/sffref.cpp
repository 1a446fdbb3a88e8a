#include "sffref.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace sffref {

using sff::FloatGrid;
using sff::FocusMap;
using sff::Image;
using sff::ImageStack;
using sff::Kernel;
using sff::OperatorConfig;
using sff::OperatorKind;

namespace {

int clampi(int i, int n) { return i < 0 ? 0 : (i >= n ? n - 1 : i); }

double pixel(const Image& im, int x, int y) {
    return im.pixels[static_cast<std::size_t>(clampi(y, im.height)) * im.width + clampi(x, im.width)];
}

double cell(const FloatGrid& g, int x, int y) {
    return g.values[static_cast<std::size_t>(clampi(y, g.height)) * g.width + clampi(x, g.width)];
}

FocusMap sum_over_window(const FloatGrid& response, int window) {
    int r = window / 2;
    FocusMap out(response.width, response.height);
    for (int y = 0; y < response.height; ++y)
        for (int x = 0; x < response.width; ++x) {
            double acc = 0.0;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx)
                    acc += cell(response, x + dx, y + dy);
            out.at(x, y) = acc;
        }
    return out;
}

} // namespace

FloatGrid convolve(const FloatGrid& grid, const Kernel& kernel) {
    int r = kernel.radius;
    FloatGrid out(grid.width, grid.height);
    for (int y = 0; y < grid.height; ++y)
        for (int x = 0; x < grid.width; ++x) {
            double acc = 0.0;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx)
                    acc += kernel.at(dx, dy) * cell(grid, x + dx, y + dy);
            out.at(x, y) = acc;
        }
    return out;
}

FocusMap grae(const Image& frame, const OperatorConfig& cfg) {
    FloatGrid response(frame.width, frame.height);
    for (int y = 0; y < frame.height; ++y)
        for (int x = 0; x < frame.width; ++x) {
            double gx = pixel(frame, x + 1, y) - pixel(frame, x, y);
            double gy = pixel(frame, x, y + 1) - pixel(frame, x, y);
            response.at(x, y) = gx * gx + gy * gy;
        }
    return sum_over_window(response, cfg.window);
}

namespace {

double ml(const Image& frame, int x, int y, int s) {
    double c = 2.0 * pixel(frame, x, y);
    return std::fabs(c - pixel(frame, x - s, y) - pixel(frame, x + s, y)) +
           std::fabs(c - pixel(frame, x, y - s) - pixel(frame, x, y + s));
}

} // namespace

FocusMap lapm(const Image& frame, const OperatorConfig& cfg) {
    FloatGrid response(frame.width, frame.height);
    for (int y = 0; y < frame.height; ++y)
        for (int x = 0; x < frame.width; ++x)
            response.at(x, y) = ml(frame, x, y, cfg.step);
    return sum_over_window(response, cfg.window);
}

FocusMap lapv(const Image& frame, const OperatorConfig& cfg) {
    FloatGrid lap(frame.width, frame.height);
    for (int y = 0; y < frame.height; ++y)
        for (int x = 0; x < frame.width; ++x)
            lap.at(x, y) = pixel(frame, x, y - 1) + pixel(frame, x - 1, y) - 4.0 * pixel(frame, x, y) +
                           pixel(frame, x + 1, y) + pixel(frame, x, y + 1);
    int r = cfg.window / 2;
    double count = static_cast<double>(cfg.window) * cfg.window;
    FocusMap out(frame.width, frame.height);
    for (int y = 0; y < frame.height; ++y)
        for (int x = 0; x < frame.width; ++x) {
            double sum = 0.0;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx)
                    sum += cell(lap, x + dx, y + dy);
            double mean = sum / count;
            double var = 0.0;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx) {
                    double d = cell(lap, x + dx, y + dy) - mean;
                    var += d * d;
                }
            out.at(x, y) = var / count;
        }
    return out;
}

FocusMap lapd(const Image& frame, const OperatorConfig& cfg) {
    int s = cfg.step;
    double diag = 1.0 / std::sqrt(2.0);
    FloatGrid response(frame.width, frame.height);
    for (int y = 0; y < frame.height; ++y)
        for (int x = 0; x < frame.width; ++x) {
            double c = 2.0 * pixel(frame, x, y);
            double d1 = std::fabs(c - pixel(frame, x - s, y - s) - pixel(frame, x + s, y + s));
            double d2 = std::fabs(c - pixel(frame, x - s, y + s) - pixel(frame, x + s, y - s));
            response.at(x, y) = ml(frame, x, y, s) + diag * (d1 + d2);
        }
    return sum_over_window(response, cfg.window);
}

FocusMap hise(const Image& frame, const OperatorConfig& cfg) {
    int r = cfg.window / 2;
    int bins = cfg.histogram_bins;
    double count = static_cast<double>(cfg.window) * cfg.window;
    std::vector<int> hist(static_cast<std::size_t>(bins));
    FocusMap out(frame.width, frame.height);
    for (int y = 0; y < frame.height; ++y)
        for (int x = 0; x < frame.width; ++x) {
            std::fill(hist.begin(), hist.end(), 0);
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx) {
                    double v = pixel(frame, x + dx, y + dy);
                    int bin = static_cast<int>(std::floor(v * bins / 255.0));
                    bin = bin < 0 ? 0 : (bin >= bins ? bins - 1 : bin);
                    ++hist[static_cast<std::size_t>(bin)];
                }
            double entropy = 0.0;
            for (int bin = 0; bin < bins; ++bin)
                if (hist[static_cast<std::size_t>(bin)] > 0) {
                    double p = hist[static_cast<std::size_t>(bin)] / count;
                    entropy -= p * std::log2(p);
                }
            out.at(x, y) = entropy == 0.0 ? 0.0 : entropy;
        }
    return out;
}

FocusMap curv(const Image& frame, const OperatorConfig& cfg) {
    // Least squares of c0 + c1*dx + c2*dy + c3*dx^2 + c4*dy^2 on the 3x3
    // neighborhood, solved per pixel from the normal equations by Gaussian
    // elimination in extended precision.
    FloatGrid response(frame.width, frame.height);
    for (int y = 0; y < frame.height; ++y)
        for (int x = 0; x < frame.width; ++x) {
            long double gram[5][5] = {};
            long double rhs[5] = {};
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    long double basis[5] = {1.0L, static_cast<long double>(dx), static_cast<long double>(dy),
                                            static_cast<long double>(dx) * dx, static_cast<long double>(dy) * dy};
                    long double v = pixel(frame, x + dx, y + dy);
                    for (int i = 0; i < 5; ++i) {
                        rhs[i] += basis[i] * v;
                        for (int j = 0; j < 5; ++j)
                            gram[i][j] += basis[i] * basis[j];
                    }
                }
            for (int col = 0; col < 5; ++col) {
                int piv = col;
                for (int row = col + 1; row < 5; ++row)
                    if (std::fabs(static_cast<double>(gram[row][col])) >
                        std::fabs(static_cast<double>(gram[piv][col])))
                        piv = row;
                for (int j = 0; j < 5; ++j)
                    std::swap(gram[col][j], gram[piv][j]);
                std::swap(rhs[col], rhs[piv]);
                for (int row = col + 1; row < 5; ++row) {
                    long double factor = gram[row][col] / gram[col][col];
                    for (int j = col; j < 5; ++j)
                        gram[row][j] -= factor * gram[col][j];
                    rhs[row] -= factor * rhs[col];
                }
            }
            long double coeff[5];
            for (int row = 4; row >= 0; --row) {
                long double acc = rhs[row];
                for (int j = row + 1; j < 5; ++j)
                    acc -= gram[row][j] * coeff[j];
                coeff[row] = acc / gram[row][row];
            }
            response.at(x, y) = static_cast<double>(std::fabs(static_cast<double>(coeff[1])) +
                                                    std::fabs(static_cast<double>(coeff[2])) +
                                                    std::fabs(static_cast<double>(coeff[3])) +
                                                    std::fabs(static_cast<double>(coeff[4])));
        }
    return sum_over_window(response, cfg.window);
}

FocusMap wavs(const Image& frame, const OperatorConfig& cfg) {
    // Filter taps recomputed from the closed form rather than copied from the
    // main library.
    const double s10 = std::sqrt(10.0);
    const double s = std::sqrt(5.0 + 2.0 * s10);
    const double norm = 16.0 * std::sqrt(2.0);
    const double low[6] = {(1 + s10 + s) / norm,  (5 + s10 + 3 * s) / norm, (10 - 2 * s10 + 2 * s) / norm,
                           (10 - 2 * s10 - 2 * s) / norm, (5 + s10 - 3 * s) / norm, (1 + s10 - s) / norm};
    double high[6];
    for (int n = 0; n < 6; ++n)
        high[n] = (n % 2 == 0 ? 1.0 : -1.0) * low[5 - n];

    const int w = frame.width, h = frame.height;
    const int ew = w + (w % 2), eh = h + (h % 2);
    FloatGrid padded(ew, eh);
    for (int y = 0; y < eh; ++y)
        for (int x = 0; x < ew; ++x)
            padded.at(x, y) = pixel(frame, x, y);

    const int hw = ew / 2, hh = eh / 2;
    FloatGrid row_low(hw, eh), row_high(hw, eh);
    for (int y = 0; y < eh; ++y)
        for (int k = 0; k < hw; ++k) {
            double a = 0.0, d = 0.0;
            for (int t = 0; t < 6; ++t) {
                double v = padded.at((2 * k + t) % ew, y);
                a += low[t] * v;
                d += high[t] * v;
            }
            row_low.at(k, y) = a;
            row_high.at(k, y) = d;
        }
    FloatGrid lh(hw, hh), hl(hw, hh), hh_band(hw, hh);
    for (int x = 0; x < hw; ++x)
        for (int k = 0; k < hh; ++k) {
            double low_detail = 0.0, high_approx = 0.0, high_detail = 0.0;
            for (int t = 0; t < 6; ++t) {
                int yy = (2 * k + t) % eh;
                low_detail += high[t] * row_low.at(x, yy);
                high_approx += low[t] * row_high.at(x, yy);
                high_detail += high[t] * row_high.at(x, yy);
            }
            lh.at(x, k) = low_detail;
            hl.at(x, k) = high_approx;
            hh_band.at(x, k) = high_detail;
        }

    FloatGrid upsampled(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            upsampled.at(x, y) = std::fabs(lh.at(x / 2, y / 2)) + std::fabs(hl.at(x / 2, y / 2)) +
                                 std::fabs(hh_band.at(x / 2, y / 2));
    return sum_over_window(upsampled, cfg.window);
}

FocusMap lap3(const ImageStack& stack, int k, const OperatorConfig& cfg) {
    int frames = static_cast<int>(stack.size());
    const Image& frame = stack[static_cast<std::size_t>(k)];
    const Image& prev = stack[static_cast<std::size_t>(clampi(k - 1, frames))];
    const Image& next = stack[static_cast<std::size_t>(clampi(k + 1, frames))];
    FloatGrid response(frame.width, frame.height);
    for (int y = 0; y < frame.height; ++y)
        for (int x = 0; x < frame.width; ++x) {
            double v = 6.0 * pixel(frame, x, y) - pixel(frame, x - 1, y) - pixel(frame, x + 1, y) -
                       pixel(frame, x, y - 1) - pixel(frame, x, y + 1) - pixel(prev, x, y) -
                       pixel(next, x, y);
            response.at(x, y) = v * v;
        }
    return sum_over_window(response, cfg.window);
}

FocusMap focus_map(const ImageStack& stack, int k, OperatorKind kind, const OperatorConfig& cfg) {
    const Image& frame = stack[static_cast<std::size_t>(k)];
    switch (kind) {
        case OperatorKind::Curv: return curv(frame, cfg);
        case OperatorKind::Grae: return grae(frame, cfg);
        case OperatorKind::Hise: return hise(frame, cfg);
        case OperatorKind::Lapm: return lapm(frame, cfg);
        case OperatorKind::Lapv: return lapv(frame, cfg);
        case OperatorKind::Lapd: return lapd(frame, cfg);
        case OperatorKind::Lap3: return lap3(stack, k, cfg);
        case OperatorKind::Wavs: return wavs(frame, cfg);
    }
    throw std::invalid_argument("unreachable operator kind");
}

double mse(const Image& a, const Image& b) {
    double sum = 0.0;
    for (int y = 0; y < a.height; ++y)
        for (int x = 0; x < a.width; ++x) {
            double d = a.at(x, y) - b.at(x, y);
            sum += d * d;
        }
    return sum / (static_cast<double>(a.width) * a.height);
}

double psnr(const Image& a, const Image& b) {
    double e = mse(a, b);
    if (e == 0.0)
        return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / e);
}

double sc(const Image& a, const Image& b) {
    double num = 0.0, den = 0.0;
    for (int y = 0; y < a.height; ++y)
        for (int x = 0; x < a.width; ++x) {
            num += a.at(x, y) * a.at(x, y);
            den += b.at(x, y) * b.at(x, y);
        }
    return num / den;
}

double ncc(const Image& a, const Image& b) {
    double num = 0.0, den = 0.0;
    for (int y = 0; y < a.height; ++y)
        for (int x = 0; x < a.width; ++x) {
            num += a.at(x, y) * b.at(x, y);
            den += a.at(x, y) * a.at(x, y);
        }
    return num / den;
}

double md(const Image& a, const Image& b) {
    double max = 0.0;
    for (int y = 0; y < a.height; ++y)
        for (int x = 0; x < a.width; ++x) {
            double d = std::fabs(a.at(x, y) - b.at(x, y));
            if (d > max)
                max = d;
        }
    return max;
}

double nae(const Image& a, const Image& b) {
    double num = 0.0, den = 0.0;
    for (int y = 0; y < a.height; ++y)
        for (int x = 0; x < a.width; ++x) {
            num += std::fabs(a.at(x, y) - b.at(x, y));
            den += a.at(x, y);
        }
    return num / den;
}

double ad(const Image& a, const Image& b) {
    double sum = 0.0;
    for (int y = 0; y < a.height; ++y)
        for (int x = 0; x < a.width; ++x)
            sum += a.at(x, y) - b.at(x, y);
    return sum / (static_cast<double>(a.width) * a.height);
}

} // namespace sffref
