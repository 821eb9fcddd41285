#pragma once

#include "camera.hpp"
#include "geometry.hpp"
#include "triangulate.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace sphtri {

struct SceneConfig {
    double extent_x = 20.0;  // grid span in X, centred on the optical axis
    double extent_y = 10.0;  // grid span in Y
    double spacing = 1.0;
    double depth = 1.0;              // 1 near, 10 far
    double rotation_range_deg = 10;  // per-axis uniform range for camera b
    std::uint64_t seed = 0;
};

enum class NoiseChannel { sphere, fisheye_image, pinhole_plane };
enum class NoiseDistribution { gaussian, laplacian };

struct NoiseSpec {
    NoiseChannel channel = NoiseChannel::sphere;
    NoiseDistribution distribution = NoiseDistribution::gaussian;
    double sigma = 0.0;  // std dev: radians-equivalent on the sphere, pixels on images
};

NoiseChannel noise_channel_from_name(const std::string& name);
NoiseDistribution noise_distribution_from_name(const std::string& name);
const char* noise_channel_name(NoiseChannel c);
const char* noise_distribution_name(NoiseDistribution d);

using Rng = std::mt19937_64;

struct Scene {
    std::vector<Vec3> points;  // planar grid at the configured depth
    CameraPose pose_a;         // primary camera, identity at the origin
    CameraPose pose_b;         // random unit-distance placement, small rotation
};

/// Deterministic per seed: identical config + seed give bit-identical output.
Scene generate_scene(const SceneConfig& cfg, Rng& rng);
Scene generate_scene(const SceneConfig& cfg);

/// Draws a,b,c i.i.d. from the chosen distribution (std dev sigma) and
/// rotates the ray by the normalised quaternion (1, a, b, c).
UnitRay perturb_on_sphere(const UnitRay& u, NoiseDistribution dist, double sigma, Rng& rng);

/// One synthetic observation; pixels present only for image channels.
struct SyntheticObservation {
    Vec3 point_true;
    UnitRay ray_a;
    UnitRay ray_b;
    std::optional<PixelPoint> pixel_a;
    std::optional<PixelPoint> pixel_b;
};

struct DroppedPoint {
    std::size_t point_index;
    std::string reason;
};

struct SyntheticBatch {
    Scene scene;
    std::vector<SyntheticObservation> observations;
    std::vector<DroppedPoint> dropped;
};

/// Projects scene points into both cameras and applies the configured noise
/// channel. Image channels project, filter by the image bounds, add pixel
/// noise, and unproject back to the sphere; unprojectable noisy pixels are
/// dropped with a recorded reason.
SyntheticBatch make_correspondences(const Scene& scene, const CameraModel* camera,
                                    const NoiseSpec& noise, Rng& rng);

Correspondence correspondence_of(const SyntheticObservation& o);

}  // namespace sphtri
