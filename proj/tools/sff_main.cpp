#include <cstdint>
#include <filesystem>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "sff/bench.hpp"
#include "sff/camera.hpp"
#include "sff/chart.hpp"
#include "sff/error.hpp"
#include "sff/io.hpp"
#include "sff/metrics.hpp"
#include "sff/runtime.hpp"

namespace {

// Bad flag values detected after parsing; exits with the usage code (2).
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

void require_odd_window(int window) {
    if (window < 1 || window % 2 == 0)
        throw UsageError("--window must be odd and >= 1, got " + std::to_string(window));
}

sff::SimConfig validate_sim_flags(int frames, int size, const std::string& texture,
                                  double noise_sigma, std::uint64_t seed) {
    if (frames < 2)
        throw UsageError("--frames must be >= 2, got " + std::to_string(frames));
    if (size < 16)
        throw UsageError("--size must be >= 16, got " + std::to_string(size));
    if (noise_sigma < 0.0)
        throw UsageError("--noise-sigma must be >= 0");
    sff::SimConfig config;
    config.frames = frames;
    config.size = size;
    config.noise_sigma = noise_sigma;
    config.rng_seed = seed;
    try {
        config.texture = sff::texture_from_token(texture);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return config;
}

} // namespace

int main(int argc, char** argv) {
    sff::configure_threads_from_env();

    CLI::App app{"sff: shape-from-focus benchmark toolkit (synthetic cone stacks, eight focus "
                 "operators, full-reference quality metrics)"};
    app.require_subcommand(1);

    // generate
    auto* generate = app.add_subcommand("generate", "Render a synthetic cone focus stack");
    std::string gen_out;
    int gen_frames = 60, gen_size = 302;
    std::string gen_texture = "stripes";
    double gen_noise = 0.0;
    std::uint64_t gen_seed = 1;
    generate->add_option("--out", gen_out, "Output directory")->required();
    generate->add_option("--frames", gen_frames, "Frame count (default 60)");
    generate->add_option("--size", gen_size, "Image side in pixels (default 302)");
    generate->add_option("--texture", gen_texture, "Cone texture: stripes|random");
    generate->add_option("--noise-sigma", gen_noise, "Additive Gaussian noise sigma (default 0)");
    generate->add_option("--seed", gen_seed, "RNG seed");

    // reconstruct
    auto* reconstruct = app.add_subcommand("reconstruct", "Depth map + all-in-focus from a stack");
    std::string rec_stack, rec_out, rec_operator;
    int rec_window = 7;
    bool rec_refine = false;
    reconstruct->add_option("--stack", rec_stack, "Stack directory (frame_*.pgm)")->required();
    reconstruct->add_option("--out", rec_out, "Output directory")->required();
    reconstruct->add_option("--operator", rec_operator, "Focus operator token")->required();
    reconstruct->add_option("--window", rec_window, "Aggregation window (odd, default 7)");
    reconstruct->add_flag("--refine", rec_refine, "Sub-frame parabola refinement");

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "Full-reference metrics for one image pair");
    std::string eval_processed, eval_reference, eval_method = "custom";
    bool eval_no_header = false;
    evaluate->add_option("--processed", eval_processed, "Processed image (PGM)")->required();
    evaluate->add_option("--reference", eval_reference, "Reference image (PGM)")->required();
    evaluate->add_option("--method", eval_method, "Row label for the CSV output");
    evaluate->add_flag("--no-header", eval_no_header, "Omit the CSV header");

    // bench
    auto* bench = app.add_subcommand("bench", "Full protocol: generate, reconstruct with all "
                                              "eight operators, score, chart");
    std::string bench_out, bench_stack;
    int bench_frames = 60, bench_size = 302, bench_window = 7;
    std::string bench_texture = "stripes";
    double bench_noise = 0.0;
    std::uint64_t bench_seed = 1;
    bool bench_refine = false;
    bench->add_option("--out", bench_out, "Output directory")->required();
    bench->add_option("--stack", bench_stack, "Reuse an existing stack directory");
    bench->add_option("--frames", bench_frames, "Frame count (default 60)");
    bench->add_option("--size", bench_size, "Image side in pixels (default 302)");
    bench->add_option("--texture", bench_texture, "Cone texture: stripes|random");
    bench->add_option("--noise-sigma", bench_noise, "Additive Gaussian noise sigma (default 0)");
    bench->add_option("--seed", bench_seed, "RNG seed");
    bench->add_option("--window", bench_window, "Aggregation window (odd, default 7)");
    bench->add_flag("--refine", bench_refine, "Sub-frame parabola refinement");

    // plot
    auto* plot = app.add_subcommand("plot", "Bar chart (SVG) for one metric of a metrics CSV");
    std::string plot_csv, plot_metric, plot_out;
    plot->add_option("csv", plot_csv, "Metrics CSV produced by bench/evaluate")->required();
    plot->add_option("--metric", plot_metric, "One of mse,psnr,ncc,ad,sc,md,nae")->required();
    plot->add_option("--out", plot_out, "Output SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (generate->parsed()) {
            sff::SimConfig config = validate_sim_flags(gen_frames, gen_size, gen_texture, gen_noise, gen_seed);
            sff::run_generate(config, sff::ThinLensCamera{}, gen_out);
        } else if (reconstruct->parsed()) {
            require_odd_window(rec_window);
            sff::OperatorKind kind;
            try {
                kind = sff::operator_from_token(rec_operator);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            sff::OperatorConfig cfg;
            cfg.window = rec_window;
            cfg.refine = rec_refine;
            sff::run_reconstruct(rec_stack, kind, cfg, rec_out);
        } else if (evaluate->parsed()) {
            sff::Image processed = sff::load_pgm(eval_processed);
            sff::Image reference = sff::load_pgm(eval_reference);
            sff::MetricReport report = sff::evaluate_all(reference, processed, eval_method);
            if (!eval_no_header)
                std::cout << sff::metrics_csv_header() << "\n";
            std::cout << sff::metrics_csv_row(report) << "\n";
        } else if (bench->parsed()) {
            require_odd_window(bench_window);
            sff::BenchOptions options;
            options.config = validate_sim_flags(bench_frames, bench_size, bench_texture, bench_noise, bench_seed);
            options.op_config.window = bench_window;
            options.op_config.refine = bench_refine;
            options.out_dir = bench_out;
            options.stack_dir = bench_stack;
            sff::run_bench(options);
        } else if (plot->parsed()) {
            if (!sff::is_metric_name(plot_metric))
                throw UsageError("unknown metric '" + plot_metric + "' (valid: mse, psnr, ncc, ad, sc, md, nae)");
            auto rows = sff::parse_metrics_csv(sff::read_file_bytes(plot_csv));
            sff::atomic_write_bytes(plot_out, sff::render_metric_chart(rows, plot_metric));
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
