#include "sff/focus_ops.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sff/dwt.hpp"
#include "sff/filter.hpp"

namespace sff {

std::string_view operator_token(OperatorKind kind) {
    switch (kind) {
        case OperatorKind::Curv: return "curv";
        case OperatorKind::Grae: return "grae";
        case OperatorKind::Hise: return "hise";
        case OperatorKind::Lapm: return "lapm";
        case OperatorKind::Lapv: return "lapv";
        case OperatorKind::Lapd: return "lapd";
        case OperatorKind::Lap3: return "lap3";
        case OperatorKind::Wavs: return "wavs";
    }
    throw std::invalid_argument("unreachable operator kind");
}

OperatorKind operator_from_token(std::string_view token) {
    for (OperatorKind kind : kAllOperators)
        if (token == operator_token(kind))
            return kind;
    throw std::invalid_argument("unknown operator '" + std::string(token) +
                                "' (valid: curv, grae, hise, lapm, lapv, lapd, lap3, wavs)");
}

namespace {

void validate_config(const OperatorConfig& cfg) {
    if (cfg.window < 1 || cfg.window % 2 == 0)
        throw std::invalid_argument("window must be odd and >= 1, got " + std::to_string(cfg.window));
    if (cfg.step < 1)
        throw std::invalid_argument("derivative step must be >= 1");
    if (cfg.histogram_bins < 1)
        throw std::invalid_argument("histogram_bins must be >= 1");
}

void require_min_size(const Image& frame, int min_w, int min_h, const char* op) {
    if (frame.width < min_w || frame.height < min_h)
        throw std::invalid_argument(std::string(op) + " needs a frame of at least " +
                                    std::to_string(min_w) + "x" + std::to_string(min_h));
}

// Window sum with clamp-to-edge borders. The per-pixel accumulation order
// (dy outer, dx inner) matches the brute-force reference, keeping the two
// paths within strict comparison tolerance.
FloatGrid window_sum(const FloatGrid& response, int window) {
    if (window == 1)
        return response;
    const int r = window / 2;
    const int w = response.width, h = response.height;
    FloatGrid out(w, h);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int dy = -r; dy <= r; ++dy) {
                const double* row = response.values.data() + static_cast<std::size_t>(edge_clamp(y + dy, h)) * w;
                for (int dx = -r; dx <= r; ++dx)
                    acc += row[edge_clamp(x + dx, w)];
            }
            out.values[static_cast<std::size_t>(y) * w + x] = acc;
        }
    return out;
}

} // namespace

FocusMap grae(const Image& frame, const OperatorConfig& cfg) {
    validate_config(cfg);
    require_min_size(frame, 3, 3, "grae");
    const int w = frame.width, h = frame.height;
    FloatGrid response(w, h);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double c = frame.at(x, y);
            double gx = frame.at(edge_clamp(x + 1, w), y) - c;
            double gy = frame.at(x, edge_clamp(y + 1, h)) - c;
            response.at(x, y) = gx * gx + gy * gy;
        }
    return window_sum(response, cfg.window);
}

namespace {

// Modified Laplacian: absolute second differences along x and y.
double ml_response(const Image& frame, int x, int y, int s) {
    const int w = frame.width, h = frame.height;
    double c = 2.0 * frame.at(x, y);
    double mx = std::fabs(c - frame.at(edge_clamp(x - s, w), y) - frame.at(edge_clamp(x + s, w), y));
    double my = std::fabs(c - frame.at(x, edge_clamp(y - s, h)) - frame.at(x, edge_clamp(y + s, h)));
    return mx + my;
}

} // namespace

FocusMap lapm(const Image& frame, const OperatorConfig& cfg) {
    validate_config(cfg);
    require_min_size(frame, 2 * cfg.step + 1, 2 * cfg.step + 1, "lapm");
    FloatGrid response(frame.width, frame.height);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < frame.height; ++y)
        for (int x = 0; x < frame.width; ++x)
            response.at(x, y) = ml_response(frame, x, y, cfg.step);
    return window_sum(response, cfg.window);
}

FocusMap lapd(const Image& frame, const OperatorConfig& cfg) {
    validate_config(cfg);
    require_min_size(frame, 2 * cfg.step + 1, 2 * cfg.step + 1, "lapd");
    const int w = frame.width, h = frame.height;
    const int s = cfg.step;
    const double diag = 1.0 / std::sqrt(2.0);
    FloatGrid response(w, h);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double c = 2.0 * frame.at(x, y);
            double d1 = std::fabs(c - frame.at(edge_clamp(x - s, w), edge_clamp(y - s, h)) -
                                  frame.at(edge_clamp(x + s, w), edge_clamp(y + s, h)));
            double d2 = std::fabs(c - frame.at(edge_clamp(x - s, w), edge_clamp(y + s, h)) -
                                  frame.at(edge_clamp(x + s, w), edge_clamp(y - s, h)));
            response.at(x, y) = ml_response(frame, x, y, s) + diag * (d1 + d2);
        }
    return window_sum(response, cfg.window);
}

FocusMap lapv(const Image& frame, const OperatorConfig& cfg) {
    validate_config(cfg);
    require_min_size(frame, 3, 3, "lapv");
    Kernel laplacian;
    laplacian.radius = 1;
    laplacian.weights = {0, 1, 0, 1, -4, 1, 0, 1, 0};
    FloatGrid lap = convolve(frame, laplacian);
    const int w = frame.width, h = frame.height;
    const int r = cfg.window / 2;
    const double count = static_cast<double>(cfg.window) * cfg.window;
    FloatGrid out(w, h);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double sum = 0.0;
            for (int dy = -r; dy <= r; ++dy) {
                const double* row = lap.values.data() + static_cast<std::size_t>(edge_clamp(y + dy, h)) * w;
                for (int dx = -r; dx <= r; ++dx)
                    sum += row[edge_clamp(x + dx, w)];
            }
            double mean = sum / count;
            double var = 0.0;
            for (int dy = -r; dy <= r; ++dy) {
                const double* row = lap.values.data() + static_cast<std::size_t>(edge_clamp(y + dy, h)) * w;
                for (int dx = -r; dx <= r; ++dx) {
                    double d = row[edge_clamp(x + dx, w)] - mean;
                    var += d * d;
                }
            }
            out.at(x, y) = var / count;
        }
    return out;
}

FocusMap hise(const Image& frame, const OperatorConfig& cfg) {
    validate_config(cfg);
    require_min_size(frame, cfg.window, cfg.window, "hise");
    const int w = frame.width, h = frame.height;
    const int r = cfg.window / 2;
    const int bins = cfg.histogram_bins;
    const double count = static_cast<double>(cfg.window) * cfg.window;
    const double inv_log2 = 1.0 / std::log(2.0);
    FloatGrid out(w, h);
#pragma omp parallel
    {
        std::vector<int> hist(static_cast<std::size_t>(bins), 0);
        std::vector<int> touched;
        touched.reserve(static_cast<std::size_t>(cfg.window) * cfg.window);
#pragma omp for schedule(static)
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                touched.clear();
                for (int dy = -r; dy <= r; ++dy) {
                    const double* row = frame.pixels.data() + static_cast<std::size_t>(edge_clamp(y + dy, h)) * w;
                    for (int dx = -r; dx <= r; ++dx) {
                        double v = row[edge_clamp(x + dx, w)];
                        int bin = static_cast<int>(std::floor(v * bins / 255.0));
                        bin = bin < 0 ? 0 : (bin >= bins ? bins - 1 : bin);
                        if (hist[bin]++ == 0)
                            touched.push_back(bin);
                    }
                }
                double entropy = 0.0;
                for (int bin : touched) {
                    double p = hist[bin] / count;
                    entropy -= p * std::log(p) * inv_log2;
                    hist[bin] = 0;
                }
                // -0.0 from a single-bin window normalizes to 0.
                out.at(x, y) = entropy == 0.0 ? 0.0 : entropy;
            }
    }
    return out;
}

FocusMap curv(const Image& frame, const OperatorConfig& cfg) {
    validate_config(cfg);
    require_min_size(frame, 3, 3, "curv");
    const int w = frame.width, h = frame.height;
    FloatGrid response(w, h);
    // Closed-form least-squares fit of c0 + c1*dx + c2*dy + c3*dx^2 + c4*dy^2
    // over the 3x3 neighborhood: c1, c2 from the antisymmetric masks,
    // c3 = (3*sum(dx^2*I) - 2*sum(I))/6 and symmetrically for c4.
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double n[3][3];
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx)
                    n[dy + 1][dx + 1] = frame.at(edge_clamp(x + dx, w), edge_clamp(y + dy, h));
            double total = 0.0, by_dx2 = 0.0, by_dy2 = 0.0, by_dx = 0.0, by_dy = 0.0;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    double v = n[dy + 1][dx + 1];
                    total += v;
                    by_dx += dx * v;
                    by_dy += dy * v;
                    by_dx2 += dx * dx * v;
                    by_dy2 += dy * dy * v;
                }
            double c1 = by_dx / 6.0;
            double c2 = by_dy / 6.0;
            double c3 = (3.0 * by_dx2 - 2.0 * total) / 6.0;
            double c4 = (3.0 * by_dy2 - 2.0 * total) / 6.0;
            response.at(x, y) = std::fabs(c1) + std::fabs(c2) + std::fabs(c3) + std::fabs(c4);
        }
    return window_sum(response, cfg.window);
}

FocusMap wavs(const Image& frame, const OperatorConfig& cfg) {
    validate_config(cfg);
    require_min_size(frame, 16, 16, "wavs");
    const int w = frame.width, h = frame.height;
    // Periodic transform wants even dimensions; odd frames replicate the
    // last row/column, and the upsampled detail grid is cropped back.
    const int ew = w + (w % 2), eh = h + (h % 2);
    FloatGrid padded(ew, eh);
    for (int y = 0; y < eh; ++y)
        for (int x = 0; x < ew; ++x)
            padded.at(x, y) = frame.at(edge_clamp(x, w), edge_clamp(y, h));
    DwtSubbands sub = dwt2_forward(padded);
    FloatGrid detail(sub.lh.width, sub.lh.height);
    for (std::size_t i = 0; i < detail.values.size(); ++i)
        detail.values[i] = std::fabs(sub.lh.values[i]) + std::fabs(sub.hl.values[i]) +
                           std::fabs(sub.hh.values[i]);
    FloatGrid upsampled(w, h);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            upsampled.at(x, y) = detail.at(x / 2, y / 2);
    return window_sum(upsampled, cfg.window);
}

FocusMap lap3(const ImageStack& stack, int k, const OperatorConfig& cfg) {
    validate_config(cfg);
    if (stack.empty())
        throw std::invalid_argument("lap3 needs a non-empty stack");
    if (k < 0 || k >= static_cast<int>(stack.size()))
        throw std::invalid_argument("lap3 frame index out of range");
    const Image& frame = stack[static_cast<std::size_t>(k)];
    require_min_size(frame, 3, 3, "lap3");
    const int frames = static_cast<int>(stack.size());
    const Image& prev = stack[static_cast<std::size_t>(edge_clamp(k - 1, frames))];
    const Image& next = stack[static_cast<std::size_t>(edge_clamp(k + 1, frames))];
    if (prev.width != frame.width || prev.height != frame.height ||
        next.width != frame.width || next.height != frame.height)
        throw std::invalid_argument("lap3 stack frames differ in size");
    const int w = frame.width, h = frame.height;
    FloatGrid response(w, h);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double v = 6.0 * frame.at(x, y) -
                       frame.at(edge_clamp(x - 1, w), y) - frame.at(edge_clamp(x + 1, w), y) -
                       frame.at(x, edge_clamp(y - 1, h)) - frame.at(x, edge_clamp(y + 1, h)) -
                       prev.at(x, y) - next.at(x, y);
            response.at(x, y) = v * v;
        }
    return window_sum(response, cfg.window);
}

FocusMap focus_map(const ImageStack& stack, int k, OperatorKind kind, const OperatorConfig& cfg) {
    if (k < 0 || k >= static_cast<int>(stack.size()))
        throw std::invalid_argument("frame index out of range");
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

} // namespace sff
