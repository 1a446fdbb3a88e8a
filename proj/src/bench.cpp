#include "sff/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "sff/chart.hpp"
#include "sff/error.hpp"
#include "sff/filter.hpp"
#include "sff/io.hpp"
#include "sff/pipeline.hpp"
#include "sff/runtime.hpp"

namespace sff {

namespace {

// Shortest decimal form that parses back to the same double.
std::string format_double(double v) {
    char buf[64];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v)
            break;
    }
    return buf;
}

std::string frame_filename(int k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "frame_%03d.pgm", k);
    return buf;
}

Image quantize_to_integers(const Image& image) {
    Image out(image.width, image.height);
    for (std::size_t i = 0; i < image.pixels.size(); ++i)
        out.pixels[i] = round_half_even(std::clamp(image.pixels[i], 0.0, 255.0));
    return out;
}

MetricReport nan_report(const std::string& method) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    MetricReport r;
    r.method = method;
    r.mse = r.psnr = r.ncc = r.ad = r.sc = r.md = r.nae = nan;
    return r;
}

void ensure_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

} // namespace

void Manifest::add(std::string key, std::string value) {
    entries.emplace_back(std::move(key), std::move(value));
}

void Manifest::add(std::string key, double value) {
    entries.emplace_back(std::move(key), format_double(value));
}

void Manifest::add(std::string key, std::int64_t value) {
    entries.emplace_back(std::move(key), std::to_string(value));
}

std::string Manifest::serialize() const {
    std::string out;
    for (const auto& [key, value] : entries)
        out += key + "=" + value + "\n";
    return out;
}

Manifest config_manifest(const SimConfig& config, const ThinLensCamera& camera) {
    Manifest m;
    m.add("tool_version", std::string(kToolVersion));
    m.add("frames", static_cast<std::int64_t>(config.frames));
    m.add("size", static_cast<std::int64_t>(config.size));
    m.add("texture", std::string(texture_token(config.texture)));
    m.add("noise_sigma", config.noise_sigma);
    m.add("rng_seed", static_cast<std::int64_t>(config.rng_seed));
    m.add("focal_length_mm", camera.focal_length_mm);
    m.add("aperture_mm", camera.aperture_mm);
    m.add("v_min_mm", camera.v_min_mm);
    m.add("v_max_mm", camera.v_max_mm);
    m.add("pixel_pitch_mm", camera.pixel_pitch_mm);
    return m;
}

void run_generate(const SimConfig& config, const ThinLensCamera& camera,
                  const std::filesystem::path& out_dir) {
    ensure_directory(out_dir);
    ConeScene scene = make_cone_scene(config, camera);
    ImageStack stack = render_stack(scene, camera, config);
    for (int k = 0; k < config.frames; ++k)
        save_pgm(stack[static_cast<std::size_t>(k)], out_dir / frame_filename(k));
    save_float_grid(scene.gt_frame, out_dir / "gt_depth.sffd");
    save_pgm(depth_to_gray(scene.gt_frame, config.frames), out_dir / "gt_depth.pgm");
    save_pgm(scene.texture, out_dir / "texture.pgm");
    atomic_write_bytes(out_dir / "manifest.txt", config_manifest(config, camera).serialize());
}

LoadedStack load_stack_dir(const std::filesystem::path& stack_dir, bool need_ground_truth) {
    if (!std::filesystem::is_directory(stack_dir))
        throw IoError("stack directory not found: " + stack_dir.string());
    std::vector<std::string> names;
    for (const auto& entry : std::filesystem::directory_iterator(stack_dir)) {
        std::string name = entry.path().filename().string();
        if (name.rfind("frame_", 0) == 0 && name.size() > 4 && name.ends_with(".pgm"))
            names.push_back(name);
    }
    std::sort(names.begin(), names.end(), [](const std::string& a, const std::string& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    if (names.size() < 2)
        throw std::invalid_argument("stack needs at least 2 frame_*.pgm files in " + stack_dir.string());

    LoadedStack loaded;
    loaded.frames.reserve(names.size());
    for (const std::string& name : names)
        loaded.frames.push_back(load_pgm(stack_dir / name));
    for (const Image& frame : loaded.frames)
        if (frame.width != loaded.frames.front().width || frame.height != loaded.frames.front().height)
            throw std::invalid_argument("ragged stack: frame dimensions differ in " + stack_dir.string());

    if (std::filesystem::exists(stack_dir / "gt_depth.sffd") &&
        std::filesystem::exists(stack_dir / "texture.pgm")) {
        loaded.gt_frame = load_float_grid(stack_dir / "gt_depth.sffd");
        loaded.texture = load_pgm(stack_dir / "texture.pgm");
        loaded.has_ground_truth = true;
    } else if (need_ground_truth) {
        throw IoError("stack lacks gt_depth.sffd/texture.pgm: " + stack_dir.string());
    }
    return loaded;
}

void run_reconstruct(const std::filesystem::path& stack_dir, OperatorKind kind,
                     const OperatorConfig& cfg, const std::filesystem::path& out_dir) {
    LoadedStack loaded = load_stack_dir(stack_dir, false);
    ensure_directory(out_dir);
    FocusVolume volume = build_focus_volume(loaded.frames, kind, cfg);
    FloatGrid depth = depth_from_volume(volume, cfg.refine);
    int frames = static_cast<int>(loaded.frames.size());
    save_float_grid(depth, out_dir / "depth.sffd");
    save_pgm(depth_to_gray(depth, frames), out_dir / "depth.pgm");
    save_pgm(all_in_focus(loaded.frames, depth), out_dir / "aif.pgm");
    Manifest m;
    m.add("tool_version", std::string(kToolVersion));
    m.add("stack", stack_dir.string());
    m.add("operator", std::string(operator_token(kind)));
    m.add("window", static_cast<std::int64_t>(cfg.window));
    m.add("refine", std::string(cfg.refine ? "1" : "0"));
    atomic_write_bytes(out_dir / "manifest.txt", m.serialize());
}

BenchResult run_bench(const BenchOptions& options) {
    ensure_directory(options.out_dir);
    std::filesystem::path stack_dir = options.stack_dir;
    if (stack_dir.empty()) {
        stack_dir = options.out_dir / "stack";
        run_generate(options.config, options.camera, stack_dir);
    }
    LoadedStack loaded = load_stack_dir(stack_dir, true);
    const int frames = static_cast<int>(loaded.frames.size());
    const Image gt_gray = depth_to_gray(loaded.gt_frame, frames);
    const Image texture = quantize_to_integers(loaded.texture);

    BenchResult result;
    result.depth_rows.push_back(ideal_report());
    result.aif_rows.push_back(ideal_report());

    for (OperatorKind kind : kAllOperators) {
        const std::string token(operator_token(kind));
        try {
            FocusVolume volume = build_focus_volume(loaded.frames, kind, options.op_config);
            FloatGrid depth = depth_from_volume(volume, options.op_config.refine);
            Image depth_gray = depth_to_gray(depth, frames);
            Image aif = quantize_to_integers(all_in_focus(loaded.frames, depth));
            save_float_grid(depth, options.out_dir / ("depth_" + token + ".sffd"));
            save_pgm(depth_gray, options.out_dir / ("depth_" + token + ".pgm"));
            save_pgm(aif, options.out_dir / ("aif_" + token + ".pgm"));
            result.depth_rows.push_back(evaluate_all(gt_gray, depth_gray, token));
            result.aif_rows.push_back(evaluate_all(texture, aif, token));
        } catch (const std::exception&) {
            // One broken operator must not abort the table.
            result.depth_rows.push_back(nan_report(token));
            result.aif_rows.push_back(nan_report(token));
        }
    }

    result.depth_csv = options.out_dir / "depth_metrics.csv";
    result.aif_csv = options.out_dir / "aif_metrics.csv";
    atomic_write_bytes(result.depth_csv, metrics_csv(result.depth_rows));
    atomic_write_bytes(result.aif_csv, metrics_csv(result.aif_rows));

    for (std::string_view metric : {"mse", "psnr", "ncc", "ad", "sc", "md", "nae"}) {
        atomic_write_bytes(options.out_dir / ("depth_" + std::string(metric) + ".svg"),
                           render_metric_chart(result.depth_rows, metric));
        atomic_write_bytes(options.out_dir / ("aif_" + std::string(metric) + ".svg"),
                           render_metric_chart(result.aif_rows, metric));
    }

    Manifest m = config_manifest(options.config, options.camera);
    std::string operators;
    for (OperatorKind kind : kAllOperators) {
        if (!operators.empty())
            operators += ",";
        operators += std::string(operator_token(kind));
    }
    m.add("operators", operators);
    m.add("window", static_cast<std::int64_t>(options.op_config.window));
    m.add("refine", std::string(options.op_config.refine ? "1" : "0"));
    m.add("stack_dir", stack_dir.string());
    m.add("depth_metrics", result.depth_csv.string());
    m.add("aif_metrics", result.aif_csv.string());
    atomic_write_bytes(options.out_dir / "manifest.txt", m.serialize());
    return result;
}

} // namespace sff
