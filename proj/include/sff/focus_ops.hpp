#pragma once

#include <array>
#include <string>
#include <string_view>

#include "sff/image.hpp"

namespace sff {

enum class OperatorKind { Curv, Grae, Hise, Lapm, Lapv, Lapd, Lap3, Wavs };

// Canonical order: CSV rows, bench loops and chart bars all follow it.
inline constexpr std::array<OperatorKind, 8> kAllOperators = {
    OperatorKind::Curv, OperatorKind::Grae, OperatorKind::Hise, OperatorKind::Lapm,
    OperatorKind::Lapv, OperatorKind::Lapd, OperatorKind::Lap3, OperatorKind::Wavs,
};

std::string_view operator_token(OperatorKind kind);
// Throws std::invalid_argument listing the eight valid tokens.
OperatorKind operator_from_token(std::string_view token);

struct OperatorConfig {
    int window = 7;         // odd, >= 1; 1 degenerates to the raw response
    int step = 1;           // second-difference spacing for LAPM/LAPD
    int histogram_bins = 256; // HISE bins over [0, 255]
    bool refine = false;    // sub-frame depth refinement, consumed by the pipeline
};

// Per-pixel focus measures. Responses are aggregated over a window x window
// neighborhood with clamp-to-edge borders: summed for GRAE/LAPM/LAPD/LAP3/
// CURV/WAVS, variance for LAPV, histogram entropy for HISE.
FocusMap grae(const Image& frame, const OperatorConfig& cfg);
FocusMap lapm(const Image& frame, const OperatorConfig& cfg);
FocusMap lapv(const Image& frame, const OperatorConfig& cfg);
FocusMap lapd(const Image& frame, const OperatorConfig& cfg);
FocusMap hise(const Image& frame, const OperatorConfig& cfg);
FocusMap curv(const Image& frame, const OperatorConfig& cfg);
FocusMap wavs(const Image& frame, const OperatorConfig& cfg);

// 3D Laplacian over (x, y, frame); frame neighbors clamp at the stack ends.
FocusMap lap3(const ImageStack& stack, int k, const OperatorConfig& cfg);

// Dispatch by kind; every kind except Lap3 reads only frame k.
FocusMap focus_map(const ImageStack& stack, int k, OperatorKind kind, const OperatorConfig& cfg);

} // namespace sff
