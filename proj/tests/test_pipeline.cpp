#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sff/camera.hpp"
#include "sff/io.hpp"
#include "sff/metrics.hpp"
#include "sff/pipeline.hpp"
#include "test_util.hpp"

using namespace sff;

namespace {

FocusVolume volume_from_profiles(int w, int h, const std::vector<std::vector<double>>& per_pixel) {
    // per_pixel[i] is the focus profile of pixel i (row-major); all equal length.
    std::size_t frames = per_pixel.front().size();
    FocusVolume volume;
    for (std::size_t k = 0; k < frames; ++k) {
        FloatGrid map(w, h);
        for (std::size_t i = 0; i < map.values.size(); ++i)
            map.values[i] = per_pixel[i][k];
        volume.push_back(std::move(map));
    }
    return volume;
}

// Independent oracle for the parabola vertex: densely evaluate the quadratic
// through (0,y0), (1,y1), (2,y2) and return the argmax offset from index 1.
double dense_parabola_vertex(double y0, double y1, double y2) {
    double a = (y0 - 2.0 * y1 + y2) / 2.0;
    double b = (y2 - y0) / 2.0;
    double best_t = -1.0, best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 2000000; ++i) {
        double t = -1.0 + i * 1e-6;
        double v = a * t * t + b * t + y1;
        if (v > best) {
            best = v;
            best_t = t;
        }
    }
    return 1.0 + best_t;
}

} // namespace

TEST_CASE("build_focus_volume: identical frames yield identical maps") {
    Image frame = testutil::random_image(24, 24, 1);
    ImageStack stack = {frame, frame, frame};
    OperatorConfig cfg;
    FocusVolume volume = build_focus_volume(stack, OperatorKind::Lapm, cfg);
    REQUIRE(volume.size() == 3);
    CHECK(volume[0].values == volume[1].values);
    CHECK(volume[1].values == volume[2].values);

    FocusVolume lap3_volume = build_focus_volume(stack, OperatorKind::Lap3, cfg);
    CHECK(lap3_volume[0].values == lap3_volume[1].values);
}

TEST_CASE("build_focus_volume: rejects ragged stacks and tiny stacks") {
    ImageStack ragged = {Image(16, 16, 0.0), Image(16, 17, 0.0)};
    OperatorConfig cfg;
    CHECK_THROWS_AS(build_focus_volume(ragged, OperatorKind::Grae, cfg), std::invalid_argument);
    ImageStack single = {Image(16, 16, 0.0)};
    CHECK_THROWS_AS(build_focus_volume(single, OperatorKind::Grae, cfg), std::invalid_argument);
}

TEST_CASE("depth_from_volume: argmax, ties and parabola refinement") {
    FocusVolume volume = volume_from_profiles(2, 2, {
        {1.0, 5.0, 1.0}, // symmetric peak
        {1.0, 5.0, 3.0}, // skewed peak
        {2.0, 2.0, 2.0}, // all ties
        {9.0, 1.0, 1.0}, // peak at the edge
    });
    FloatGrid coarse = depth_from_volume(volume, false);
    CHECK(coarse.values[0] == 1.0);
    CHECK(coarse.values[1] == 1.0);
    CHECK(coarse.values[2] == 0.0); // tie -> smallest k
    CHECK(coarse.values[3] == 0.0);

    FloatGrid refined = depth_from_volume(volume, true);
    CHECK(refined.values[0] == 1.0);
    // Vertex of the parabola through (0,1),(1,5),(2,3) is 7/6.
    CHECK(refined.values[1] == doctest::Approx(7.0 / 6.0).epsilon(1e-12));
    CHECK(std::fabs(refined.values[1] - dense_parabola_vertex(1.0, 5.0, 3.0)) < 2e-6);
    CHECK(refined.values[2] == 0.0); // flat profile: no negative curvature
    CHECK(refined.values[3] == 0.0); // edge peak is never refined
}

TEST_CASE("depth_from_volume: output range and integrality") {
    std::mt19937_64 gen(5);
    std::vector<std::vector<double>> profiles;
    for (int i = 0; i < 64; ++i) {
        std::vector<double> profile(9);
        for (double& v : profile)
            v = static_cast<double>(gen() % 1000);
        profiles.push_back(std::move(profile));
    }
    FocusVolume volume = volume_from_profiles(8, 8, profiles);
    FloatGrid coarse = depth_from_volume(volume, false);
    for (double v : coarse.values) {
        CHECK(v >= 0.0);
        CHECK(v <= 8.0);
        CHECK(v == std::floor(v));
    }
    FloatGrid refined = depth_from_volume(volume, true);
    for (double v : refined.values) {
        CHECK(v >= 0.0);
        CHECK(v <= 8.0);
    }
}

TEST_CASE("depth_from_volume: positive scaling changes nothing") {
    std::mt19937_64 gen(6);
    std::vector<std::vector<double>> profiles;
    for (int i = 0; i < 36; ++i) {
        std::vector<double> profile(7);
        for (double& v : profile)
            v = static_cast<double>(gen() % 500) / 3.0;
        profiles.push_back(std::move(profile));
    }
    FocusVolume volume = volume_from_profiles(6, 6, profiles);
    FloatGrid base_coarse = depth_from_volume(volume, false);
    FloatGrid base_refined = depth_from_volume(volume, true);

    for (double scale : {2.0, 0.25}) { // powers of two: scaling is exact in FP
        FocusVolume scaled = volume;
        for (FloatGrid& map : scaled)
            for (double& v : map.values)
                v *= scale;
        CHECK(depth_from_volume(scaled, false).values == base_coarse.values);
        CHECK(depth_from_volume(scaled, true).values == base_refined.values);
    }
    FocusVolume scaled = volume;
    for (FloatGrid& map : scaled)
        for (double& v : map.values)
            v *= 1.7;
    CHECK(depth_from_volume(scaled, false).values == base_coarse.values);
    CHECK(testutil::max_abs_diff(depth_from_volume(scaled, true), base_refined) < 1e-12);
}

TEST_CASE("all_in_focus: constant depth picks one frame, rounding is half-to-even") {
    ImageStack stack;
    for (int k = 0; k < 4; ++k)
        stack.push_back(testutil::random_image(8, 8, 40 + k));
    FloatGrid depth(8, 8, 2.0);
    Image out = all_in_focus(stack, depth);
    CHECK(out.pixels == stack[2].pixels);

    FloatGrid halfway(8, 8, 1.5); // ties to frame 2
    CHECK(all_in_focus(stack, halfway).pixels == stack[2].pixels);
    FloatGrid halfway_low(8, 8, 2.5); // also ties to frame 2
    CHECK(all_in_focus(stack, halfway_low).pixels == stack[2].pixels);

    FloatGrid wrong_size(9, 8, 0.0);
    CHECK_THROWS_AS(all_in_focus(stack, wrong_size), std::invalid_argument);
}

TEST_CASE("all_in_focus with ground truth beats every single frame on the cone") {
    ThinLensCamera cam;
    SimConfig cfg;
    cfg.frames = 12;
    cfg.size = 64;
    cfg.rng_seed = 3;
    ConeScene scene = make_cone_scene(cfg, cam);
    ImageStack stack = render_stack(scene, cam, cfg);
    Image composite = all_in_focus(stack, scene.gt_frame);
    double composite_mse = mse(scene.texture, composite);
    for (const Image& frame : stack)
        CHECK(composite_mse < mse(scene.texture, frame));
}

TEST_CASE("all_in_focus with exact depth reproduces sharp texture where sigma < 0.15") {
    ThinLensCamera cam;
    SimConfig cfg;
    cfg.frames = 12;
    cfg.size = 48;
    ConeScene scene = make_cone_scene(cfg, cam);
    ImageStack stack = render_stack(scene, cam, cfg);
    Image composite = all_in_focus(stack, scene.gt_frame);
    int checked = 0;
    for (int y = 0; y < cfg.size; ++y)
        for (int x = 0; x < cfg.size; ++x) {
            int k = static_cast<int>(round_half_even(scene.gt_frame.at(x, y)));
            double sigma = blur_sigma(cam, scene.depth_mm.at(x, y), sensor_position(cam, k, cfg.frames));
            if (sigma < 0.15) {
                CHECK(composite.at(x, y) == scene.texture.at(x, y));
                ++checked;
            }
        }
    CHECK(checked > 0);
}

TEST_CASE("depth_to_gray endpoints and scaling") {
    FloatGrid depth(3, 1);
    depth.values = {0.0, 29.5, 59.0};
    Image gray = depth_to_gray(depth, 60);
    CHECK(gray.at(0, 0) == 0.0);
    CHECK(gray.at(1, 0) == 29.5 * 255.0 / 59.0);
    CHECK(gray.at(2, 0) == 255.0);
    CHECK_THROWS_AS(depth_to_gray(depth, 1), std::invalid_argument);
}
