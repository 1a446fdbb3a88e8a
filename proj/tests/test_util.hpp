#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include <unistd.h>

#include "sff/image.hpp"

namespace testutil {

inline sff::Image random_image(int w, int h, std::uint64_t seed, double lo = 0.0, double hi = 255.0) {
    std::mt19937_64 gen(seed);
    sff::Image image(w, h);
    for (double& p : image.pixels) {
        double unit = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        p = lo + (hi - lo) * unit;
    }
    return image;
}

inline sff::FloatGrid random_grid(int w, int h, std::uint64_t seed, double lo = -1e3, double hi = 1e3) {
    std::mt19937_64 gen(seed);
    sff::FloatGrid grid(w, h);
    for (double& v : grid.values) {
        double unit = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        v = lo + (hi - lo) * unit;
    }
    return grid;
}

// Fresh directory under the system temp root; removed by the destructor.
struct TempDir {
    std::filesystem::path path;

    explicit TempDir(const std::string& tag) {
        static std::atomic<int> counter{0};
        path = std::filesystem::temp_directory_path() /
               ("sff_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
};

inline double max_abs_diff(const sff::FloatGrid& a, const sff::FloatGrid& b) {
    double max = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        double d = std::fabs(a.values[i] - b.values[i]);
        if (d > max)
            max = d;
    }
    return max;
}

} // namespace testutil
