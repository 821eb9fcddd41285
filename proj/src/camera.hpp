#pragma once

#include "geometry.hpp"

#include <memory>
#include <optional>
#include <string>

namespace sphtri {

struct PixelPoint {
    double u = 0.0;
    double v = 0.0;
};

struct DoubleSphereParams {
    double fx, fy;
    double cx, cy;
    double xi;
    double alpha;  // in [0, 1]
    int width, height;
};

struct PinholeParams {
    double fx, fy;
    double cx, cy;
    int width, height;
};

/// Injective map between the image domain and the unit sphere. project()
/// and unproject() return nullopt outside the model's valid domain.
class CameraModel {
public:
    virtual ~CameraModel() = default;
    virtual std::optional<PixelPoint> project(const Vec3& point) const = 0;
    virtual std::optional<UnitRay> unproject(const PixelPoint& pixel) const = 0;
    virtual int width() const = 0;
    virtual int height() const = 0;
    virtual std::string name() const = 0;

    bool in_bounds(const PixelPoint& p) const {
        return p.u >= 0.0 && p.u < width() && p.v >= 0.0 && p.v < height();
    }
};

class DoubleSphereCamera final : public CameraModel {
public:
    explicit DoubleSphereCamera(const DoubleSphereParams& p);
    std::optional<PixelPoint> project(const Vec3& point) const override;
    std::optional<UnitRay> unproject(const PixelPoint& pixel) const override;
    int width() const override { return params_.width; }
    int height() const override { return params_.height; }
    std::string name() const override { return "double_sphere"; }
    const DoubleSphereParams& params() const { return params_; }

private:
    DoubleSphereParams params_;
    double w2_;  // field-of-view validity bound: valid when z > -w2 * |X|
};

class PinholeCamera final : public CameraModel {
public:
    explicit PinholeCamera(const PinholeParams& p);
    std::optional<PixelPoint> project(const Vec3& point) const override;
    std::optional<UnitRay> unproject(const PixelPoint& pixel) const override;
    int width() const override { return params_.width; }
    int height() const override { return params_.height; }
    std::string name() const override { return "pinhole"; }
    const PinholeParams& params() const { return params_; }

private:
    PinholeParams params_;
};

/// Parses {"model": "double_sphere"|"pinhole", "fx", "fy", "cx", "cy",
/// ["xi", "alpha",] "width", "height"}. Unknown keys are rejected.
/// Throws Error(schema) on malformed input.
std::unique_ptr<CameraModel> camera_from_json(const std::string& json_text);

/// Inverse of camera_from_json for the two built-in models.
std::string camera_to_json(const CameraModel& camera);

/// BF2M2020S23 lens parameters used throughout the synthetic experiments.
DoubleSphereParams bf2m2020s23_params();

}  // namespace sphtri
