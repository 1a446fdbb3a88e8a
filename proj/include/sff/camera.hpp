#pragma once

#include <cstdint>
#include <string>

#include "sff/image.hpp"

namespace sff {

// Thin-lens optics: 1/f = 1/u + 1/v. Lengths in millimeters.
struct ThinLensCamera {
    double focal_length_mm = 50.0;
    double aperture_mm = 25.0;
    double v_min_mm = 55.0;
    double v_max_mm = 65.0;
    double pixel_pitch_mm = 0.1;
};

enum class TextureKind { Stripes, Random };

std::string_view texture_token(TextureKind kind);
TextureKind texture_from_token(std::string_view token);

struct SimConfig {
    int frames = 60;
    int size = 302;
    TextureKind texture = TextureKind::Stripes;
    double noise_sigma = 0.0;
    std::uint64_t rng_seed = 1;
};

// Simulated cone: apex at the image center, focused at frame 0; object depth
// affine in the radial distance, clamped at the cone base.
struct ConeScene {
    int width = 0;
    int height = 0;
    FloatGrid depth_mm;  // object depth u per pixel
    Image texture;       // perfectly sharp appearance
    FloatGrid gt_frame;  // real-valued best-focus frame index in [0, K-1]
};

// Object depth perfectly focused at sensor distance v: u = 1/(1/f - 1/v).
// Throws std::domain_error when v <= f.
double focused_depth(const ThinLensCamera& camera, double v_mm);

// Gaussian PSF sigma in pixels for an object at depth u seen at sensor
// distance v: sigma = (A/2) * v * |1/f - 1/u - 1/v| / (sqrt(2) * pitch).
double blur_sigma(const ThinLensCamera& camera, double u_mm, double v_mm);

// Sensor position of frame k on the uniform [v_min, v_max] grid.
double sensor_position(const ThinLensCamera& camera, int k, int frame_count);

ConeScene make_cone_scene(const SimConfig& config, const ThinLensCamera& camera);

// K frames; per-pixel Gaussian gather of the sharp texture with the pixel's
// own sigma at that frame, sigma < 0.15 passes the texture through untouched.
// Deterministic for a fixed config, independent of thread count.
ImageStack render_stack(const ConeScene& scene, const ThinLensCamera& camera, const SimConfig& config);

} // namespace sff
