#include "sff/camera.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace sff {

std::string_view texture_token(TextureKind kind) {
    return kind == TextureKind::Stripes ? "stripes" : "random";
}

TextureKind texture_from_token(std::string_view token) {
    if (token == "stripes") return TextureKind::Stripes;
    if (token == "random") return TextureKind::Random;
    throw std::invalid_argument("unknown texture '" + std::string(token) + "' (valid: stripes, random)");
}

namespace {

void validate_camera(const ThinLensCamera& cam) {
    if (!(cam.focal_length_mm > 0.0) || !(cam.focal_length_mm < cam.v_min_mm) ||
        !(cam.v_min_mm <= cam.v_max_mm))
        throw std::invalid_argument("camera needs 0 < f < v_min <= v_max");
    if (!(cam.aperture_mm > 0.0) || !(cam.pixel_pitch_mm > 0.0))
        throw std::invalid_argument("camera aperture and pixel pitch must be positive");
}

void validate_config(const SimConfig& cfg) {
    if (cfg.frames < 2)
        throw std::invalid_argument("frame count must be >= 2");
    if (cfg.size < 16)
        throw std::invalid_argument("image size must be >= 16");
    if (!(cfg.noise_sigma >= 0.0))
        throw std::invalid_argument("noise sigma must be >= 0");
}

// Uniform double in [0, 1) from the top 53 bits of the generator.
double next_unit(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

} // namespace

double focused_depth(const ThinLensCamera& camera, double v_mm) {
    validate_camera(camera);
    if (!(v_mm > camera.focal_length_mm))
        throw std::domain_error("no real focus: sensor distance must exceed the focal length");
    return 1.0 / (1.0 / camera.focal_length_mm - 1.0 / v_mm);
}

double blur_sigma(const ThinLensCamera& camera, double u_mm, double v_mm) {
    validate_camera(camera);
    if (!(u_mm > camera.focal_length_mm) || !(v_mm > camera.focal_length_mm))
        throw std::domain_error("object depth and sensor distance must exceed the focal length");
    // Left-to-right evaluation keeps the residual exactly zero when
    // u_mm == focused_depth(v_mm); do not reassociate.
    double residual = 1.0 / camera.focal_length_mm - 1.0 / u_mm - 1.0 / v_mm;
    double radius_mm = 0.5 * camera.aperture_mm * v_mm * std::fabs(residual);
    return radius_mm / (std::sqrt(2.0) * camera.pixel_pitch_mm);
}

double sensor_position(const ThinLensCamera& camera, int k, int frame_count) {
    if (frame_count < 2 || k < 0 || k >= frame_count)
        throw std::invalid_argument("sensor_position: bad frame index");
    return camera.v_min_mm + k * (camera.v_max_mm - camera.v_min_mm) / (frame_count - 1);
}

ConeScene make_cone_scene(const SimConfig& config, const ThinLensCamera& camera) {
    validate_camera(camera);
    validate_config(config);
    const int size = config.size;
    const int frames = config.frames;
    const double center = (size - 1) / 2.0;
    const double r_max = (size - 1) / 2.0;
    // Apex (image center) focuses at frame 0 = v_min = the farthest depth;
    // the base ring at r_max focuses at frame K-1. Beyond the base the depth
    // clamps, so corners share the base's focus frame.
    const double u_apex = focused_depth(camera, camera.v_min_mm);
    const double u_base = focused_depth(camera, camera.v_max_mm);
    const double v_span = camera.v_max_mm - camera.v_min_mm;

    ConeScene scene;
    scene.width = size;
    scene.height = size;
    scene.depth_mm = FloatGrid(size, size);
    scene.gt_frame = FloatGrid(size, size);
    scene.texture = Image(size, size);

    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
            double r = std::hypot(x - center, y - center);
            double t = std::min(r / r_max, 1.0);
            double u = u_apex + (u_base - u_apex) * t;
            scene.depth_mm.at(x, y) = u;
            double v_star = 1.0 / (1.0 / camera.focal_length_mm - 1.0 / u);
            double k = (v_star - camera.v_min_mm) * (frames - 1) / v_span;
            scene.gt_frame.at(x, y) = std::clamp(k, 0.0, static_cast<double>(frames - 1));
        }

    if (config.texture == TextureKind::Stripes) {
        // Concentric rings, period 8 px: 4 px at 64 then 4 px at 192.
        for (int y = 0; y < size; ++y)
            for (int x = 0; x < size; ++x) {
                double r = std::hypot(x - center, y - center);
                int band = static_cast<int>(std::floor(r / 4.0));
                scene.texture.at(x, y) = (band % 2 == 0) ? 64.0 : 192.0;
            }
    } else {
        std::mt19937_64 gen(config.rng_seed);
        for (double& p : scene.texture.pixels)
            p = static_cast<double>(gen() % 256);
    }
    return scene;
}

ImageStack render_stack(const ConeScene& scene, const ThinLensCamera& camera, const SimConfig& config) {
    validate_camera(camera);
    validate_config(config);
    if (scene.width != config.size || scene.height != config.size)
        throw std::invalid_argument("scene dimensions disagree with the config");
    const int w = scene.width, h = scene.height;
    const Image& tex = scene.texture;

    ImageStack stack;
    stack.reserve(static_cast<std::size_t>(config.frames));
    for (int k = 0; k < config.frames; ++k) {
        const double v_k = sensor_position(camera, k, config.frames);
        Image frame(w, h);
#pragma omp parallel
        {
            std::vector<double> weight; // per-pixel 1D Gaussian taps
#pragma omp for schedule(dynamic, 8)
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x) {
                    double sigma = blur_sigma(camera, scene.depth_mm.at(x, y), v_k);
                    if (sigma < 0.15) {
                        frame.at(x, y) = tex.at(x, y);
                        continue;
                    }
                    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
                    weight.resize(static_cast<std::size_t>(radius) + 1);
                    const double inv_two_sigma2 = 1.0 / (2.0 * sigma * sigma);
                    for (int d = 0; d <= radius; ++d)
                        weight[static_cast<std::size_t>(d)] = std::exp(-(d * d) * inv_two_sigma2);
                    double acc = 0.0, norm = 0.0;
                    if (x >= radius && y >= radius && x + radius < w && y + radius < h) {
                        for (int dy = -radius; dy <= radius; ++dy) {
                            const double* row = tex.pixels.data() + static_cast<std::size_t>(y + dy) * w + x;
                            const double wy = weight[static_cast<std::size_t>(std::abs(dy))];
                            for (int dx = -radius; dx <= radius; ++dx) {
                                double wxy = wy * weight[static_cast<std::size_t>(std::abs(dx))];
                                acc += wxy * row[dx];
                                norm += wxy;
                            }
                        }
                    } else {
                        for (int dy = -radius; dy <= radius; ++dy) {
                            const double* row = tex.pixels.data() + static_cast<std::size_t>(edge_clamp(y + dy, h)) * w;
                            const double wy = weight[static_cast<std::size_t>(std::abs(dy))];
                            for (int dx = -radius; dx <= radius; ++dx) {
                                double wxy = wy * weight[static_cast<std::size_t>(std::abs(dx))];
                                acc += wxy * row[edge_clamp(x + dx, w)];
                                norm += wxy;
                            }
                        }
                    }
                    frame.at(x, y) = acc / norm;
                }
        }
        if (config.noise_sigma > 0.0) {
            // Serial Box-Muller pass so the noise field is independent of the
            // thread count; one stream per frame.
            std::mt19937_64 gen(config.rng_seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(k) + 1)));
            for (double& p : frame.pixels) {
                double u1 = 1.0 - next_unit(gen);
                double u2 = next_unit(gen);
                double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
                p = std::clamp(p + config.noise_sigma * z, 0.0, 255.0);
            }
        }
        stack.push_back(std::move(frame));
    }
    return stack;
}

} // namespace sff
