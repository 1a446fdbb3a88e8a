#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "sff/camera.hpp"
#include "sff/focus_ops.hpp"
#include "sff/metrics.hpp"

namespace sff {

// Ordered key=value manifest written alongside every output directory.
struct Manifest {
    std::vector<std::pair<std::string, std::string>> entries;

    void add(std::string key, std::string value);
    void add(std::string key, double value);
    void add(std::string key, std::int64_t value);
    std::string serialize() const;
};

Manifest config_manifest(const SimConfig& config, const ThinLensCamera& camera);

// generate: frames_###.pgm, gt_depth.{sffd,pgm}, texture.pgm, manifest.txt.
void run_generate(const SimConfig& config, const ThinLensCamera& camera,
                  const std::filesystem::path& out_dir);

// A stack directory on disk, as produced by run_generate.
struct LoadedStack {
    ImageStack frames;
    FloatGrid gt_frame;  // present when gt_depth.sffd exists
    Image texture;       // present when texture.pgm exists
    bool has_ground_truth = false;
};

LoadedStack load_stack_dir(const std::filesystem::path& stack_dir, bool need_ground_truth);

// reconstruct: depth.sffd, depth.pgm, aif.pgm, manifest.txt.
void run_reconstruct(const std::filesystem::path& stack_dir, OperatorKind kind,
                     const OperatorConfig& cfg, const std::filesystem::path& out_dir);

struct BenchOptions {
    SimConfig config;
    ThinLensCamera camera;
    OperatorConfig op_config;
    std::filesystem::path out_dir;
    std::filesystem::path stack_dir; // empty: generate under out_dir/stack
};

struct BenchResult {
    std::vector<MetricReport> depth_rows; // ideal row first, then the eight operators
    std::vector<MetricReport> aif_rows;
    std::filesystem::path depth_csv;
    std::filesystem::path aif_csv;
};

// Full protocol: generate (unless a stack is supplied), reconstruct with all
// eight operators, score depth maps and all-in-focus composites, emit CSVs,
// per-operator images and one chart per metric. A failing operator records an
// all-NaN row and the run continues.
BenchResult run_bench(const BenchOptions& options);

} // namespace sff
