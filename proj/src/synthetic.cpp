#include "synthetic.hpp"

#include <cmath>

namespace sphtri {

NoiseChannel noise_channel_from_name(const std::string& name) {
    if (name == "sphere") return NoiseChannel::sphere;
    if (name == "fisheye_image") return NoiseChannel::fisheye_image;
    if (name == "pinhole_plane") return NoiseChannel::pinhole_plane;
    throw Error(ErrorCode::config, "unknown noise channel '" + name + "'");
}

NoiseDistribution noise_distribution_from_name(const std::string& name) {
    if (name == "gaussian") return NoiseDistribution::gaussian;
    if (name == "laplacian") return NoiseDistribution::laplacian;
    throw Error(ErrorCode::config, "unknown noise distribution '" + name + "'");
}

const char* noise_channel_name(NoiseChannel c) {
    switch (c) {
        case NoiseChannel::sphere: return "sphere";
        case NoiseChannel::fisheye_image: return "fisheye_image";
        case NoiseChannel::pinhole_plane: return "pinhole_plane";
    }
    return "unknown";
}

const char* noise_distribution_name(NoiseDistribution d) {
    return d == NoiseDistribution::gaussian ? "gaussian" : "laplacian";
}

namespace {

double draw(NoiseDistribution dist, double sigma, Rng& rng) {
    if (sigma == 0.0) {
        return 0.0;
    }
    if (dist == NoiseDistribution::gaussian) {
        std::normal_distribution<double> n(0.0, sigma);
        return n(rng);
    }
    // Laplace via inverse CDF, scale sigma/sqrt(2) so the std dev is sigma.
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double u = u01(rng) - 0.5;
    const double scale = sigma / std::sqrt(2.0);
    return -scale * std::copysign(std::log1p(-2.0 * std::abs(u)), u);
}

}  // namespace

Scene generate_scene(const SceneConfig& cfg, Rng& rng) {
    if (!(cfg.extent_x > 0.0) || !(cfg.extent_y > 0.0) || !(cfg.spacing > 0.0)) {
        throw Error(ErrorCode::config, "scene config: extents and spacing must be positive");
    }
    Scene scene;
    const int nx = static_cast<int>(std::floor(cfg.extent_x / cfg.spacing + 1e-9)) + 1;
    const int ny = static_cast<int>(std::floor(cfg.extent_y / cfg.spacing + 1e-9)) + 1;
    scene.points.reserve(static_cast<std::size_t>(nx) * ny);
    const double x0 = -0.5 * cfg.extent_x;
    const double y0 = -0.5 * cfg.extent_y;
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            scene.points.emplace_back(x0 + ix * cfg.spacing, y0 + iy * cfg.spacing, cfg.depth);
        }
    }

    scene.pose_a = CameraPose{Rotation::identity(), Vec3::Zero()};

    // Second camera uniformly on the unit sphere around the primary.
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec3 dir;
    do {
        dir = Vec3(gauss(rng), gauss(rng), gauss(rng));
    } while (dir.norm() < 1e-6);
    dir.normalize();

    const double range = cfg.rotation_range_deg * M_PI / 180.0;
    std::uniform_real_distribution<double> angle(-range, range);
    const double ax = angle(rng);
    const double ay = angle(rng);
    const double az = angle(rng);
    const Rotation rot = Rotation::from_axis_angle(Vec3::UnitZ(), az) *
                         Rotation::from_axis_angle(Vec3::UnitY(), ay) *
                         Rotation::from_axis_angle(Vec3::UnitX(), ax);
    scene.pose_b = CameraPose{rot, dir};
    return scene;
}

Scene generate_scene(const SceneConfig& cfg) {
    Rng rng(cfg.seed);
    return generate_scene(cfg, rng);
}

UnitRay perturb_on_sphere(const UnitRay& u, NoiseDistribution dist, double sigma, Rng& rng) {
    const double a = draw(dist, sigma, rng);
    const double b = draw(dist, sigma, rng);
    const double c = draw(dist, sigma, rng);
    if (sigma == 0.0) {
        return u;
    }
    Eigen::Quaterniond q(1.0, a, b, c);
    q.normalize();
    return UnitRay(q * u.vec());
}

namespace {

std::optional<UnitRay> image_channel_ray(const Vec3& point_cam, const CameraModel& camera,
                                         const NoiseSpec& noise, Rng& rng,
                                         std::optional<PixelPoint>& pixel_out,
                                         std::string& reason) {
    const auto pixel = camera.project(point_cam);
    if (!pixel) {
        reason = "outside valid projection";
        return std::nullopt;
    }
    if (!camera.in_bounds(*pixel)) {
        reason = "outside image bounds";
        return std::nullopt;
    }
    PixelPoint noisy{pixel->u + draw(noise.distribution, noise.sigma, rng),
                     pixel->v + draw(noise.distribution, noise.sigma, rng)};
    const auto ray = camera.unproject(noisy);
    if (!ray) {
        reason = "noisy pixel outside model domain";
        return std::nullopt;
    }
    pixel_out = noisy;
    return ray;
}

}  // namespace

SyntheticBatch make_correspondences(const Scene& scene, const CameraModel* camera,
                                    const NoiseSpec& noise, Rng& rng) {
    if (noise.channel != NoiseChannel::sphere && camera == nullptr) {
        throw Error(ErrorCode::config, "image noise channels require a camera model");
    }
    SyntheticBatch batch;
    batch.scene = scene;
    batch.observations.reserve(scene.points.size());

    for (std::size_t i = 0; i < scene.points.size(); ++i) {
        const Vec3& X = scene.points[i];
        const Vec3 cam_a = scene.pose_a.orientation * (X - scene.pose_a.position);
        const Vec3 cam_b = scene.pose_b.orientation * (X - scene.pose_b.position);
        if (cam_a.norm() < 1e-12 || cam_b.norm() < 1e-12) {
            batch.dropped.push_back({i, "point coincides with a camera centre"});
            continue;
        }

        if (noise.channel == NoiseChannel::sphere) {
            const UnitRay ray_a =
                perturb_on_sphere(UnitRay(cam_a), noise.distribution, noise.sigma, rng);
            const UnitRay ray_b =
                perturb_on_sphere(UnitRay(cam_b), noise.distribution, noise.sigma, rng);
            batch.observations.push_back(
                {X, ray_a, ray_b, std::nullopt, std::nullopt});
            continue;
        }

        // Image channels: the drop decision uses the noise-free projection,
        // so drop counts depend only on the scene.
        std::optional<PixelPoint> pa, pb;
        std::string reason;
        const auto ray_a = image_channel_ray(cam_a, *camera, noise, rng, pa, reason);
        if (!ray_a) {
            batch.dropped.push_back({i, "camera a: " + reason});
            continue;
        }
        const auto ray_b = image_channel_ray(cam_b, *camera, noise, rng, pb, reason);
        if (!ray_b) {
            batch.dropped.push_back({i, "camera b: " + reason});
            continue;
        }
        batch.observations.push_back({X, *ray_a, *ray_b, pa, pb});
    }
    return batch;
}

Correspondence correspondence_of(const SyntheticObservation& o) {
    return Correspondence{o.ray_a, o.ray_b};
}

}  // namespace sphtri
