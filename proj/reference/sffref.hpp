#pragma once

// Serial brute-force reference implementations: plain nested loops, no shared
// filtering machinery with the main library. Tests compare the optimized
// kernels against these; the benchmark times the two side by side. Never
// linked into the CLI.

#include "sff/focus_ops.hpp"
#include "sff/image.hpp"

namespace sffref {

sff::FloatGrid convolve(const sff::FloatGrid& grid, const sff::Kernel& kernel);

sff::FocusMap grae(const sff::Image& frame, const sff::OperatorConfig& cfg);
sff::FocusMap lapm(const sff::Image& frame, const sff::OperatorConfig& cfg);
sff::FocusMap lapv(const sff::Image& frame, const sff::OperatorConfig& cfg);
sff::FocusMap lapd(const sff::Image& frame, const sff::OperatorConfig& cfg);
sff::FocusMap hise(const sff::Image& frame, const sff::OperatorConfig& cfg);
sff::FocusMap curv(const sff::Image& frame, const sff::OperatorConfig& cfg);
sff::FocusMap wavs(const sff::Image& frame, const sff::OperatorConfig& cfg);
sff::FocusMap lap3(const sff::ImageStack& stack, int k, const sff::OperatorConfig& cfg);

sff::FocusMap focus_map(const sff::ImageStack& stack, int k, sff::OperatorKind kind,
                        const sff::OperatorConfig& cfg);

double mse(const sff::Image& a, const sff::Image& b);
double psnr(const sff::Image& a, const sff::Image& b);
double sc(const sff::Image& a, const sff::Image& b);
double ncc(const sff::Image& a, const sff::Image& b);
double md(const sff::Image& a, const sff::Image& b);
double nae(const sff::Image& a, const sff::Image& b);
double ad(const sff::Image& a, const sff::Image& b);

} // namespace sffref
