#include "camera.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <set>

namespace sphtri {

using nlohmann::json;

DoubleSphereCamera::DoubleSphereCamera(const DoubleSphereParams& p) : params_(p) {
    if (!(p.fx > 0.0) || !(p.fy > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "double sphere: focal lengths must be positive");
    }
    if (!(p.alpha >= 0.0 && p.alpha <= 1.0)) {
        throw Error(ErrorCode::invalid_argument, "double sphere: alpha must be in [0, 1]");
    }
    if (p.width <= 0 || p.height <= 0) {
        throw Error(ErrorCode::invalid_argument, "double sphere: image size must be positive");
    }
    const double a = p.alpha;
    const double w1 = (a <= 0.5) ? a / (1.0 - a) : (1.0 - a) / a;
    w2_ = (w1 + p.xi) / std::sqrt(2.0 * w1 * p.xi + p.xi * p.xi + 1.0);
}

std::optional<PixelPoint> DoubleSphereCamera::project(const Vec3& X) const {
    const double d1 = X.norm();
    if (!(d1 > 0.0) || X.z() <= -w2_ * d1) {
        return std::nullopt;
    }
    const double zs = params_.xi * d1 + X.z();
    const double d2 = std::sqrt(X.x() * X.x() + X.y() * X.y() + zs * zs);
    const double denom = params_.alpha * d2 + (1.0 - params_.alpha) * zs;
    if (!(denom > 0.0)) {
        return std::nullopt;
    }
    return PixelPoint{params_.fx * X.x() / denom + params_.cx,
                      params_.fy * X.y() / denom + params_.cy};
}

std::optional<UnitRay> DoubleSphereCamera::unproject(const PixelPoint& p) const {
    const double mx = (p.u - params_.cx) / params_.fx;
    const double my = (p.v - params_.cy) / params_.fy;
    const double r2 = mx * mx + my * my;
    const double a = params_.alpha;
    const double xi = params_.xi;
    if (a > 0.5 && r2 > 1.0 / (2.0 * a - 1.0)) {
        return std::nullopt;
    }
    const double under = 1.0 - (2.0 * a - 1.0) * r2;
    if (under < 0.0) {
        return std::nullopt;
    }
    const double mz = (1.0 - a * a * r2) / (a * std::sqrt(under) + 1.0 - a);
    const double disc = mz * mz + (1.0 - xi * xi) * r2;
    if (disc < 0.0) {
        return std::nullopt;
    }
    const double k = (mz * xi + std::sqrt(disc)) / (mz * mz + r2);
    const Vec3 ray(k * mx, k * my, k * mz - xi);
    if (ray.norm() < 1e-12) {
        return std::nullopt;
    }
    return UnitRay(ray);
}

PinholeCamera::PinholeCamera(const PinholeParams& p) : params_(p) {
    if (!(p.fx > 0.0) || !(p.fy > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "pinhole: focal lengths must be positive");
    }
    if (p.width <= 0 || p.height <= 0) {
        throw Error(ErrorCode::invalid_argument, "pinhole: image size must be positive");
    }
}

std::optional<PixelPoint> PinholeCamera::project(const Vec3& X) const {
    if (!(X.z() > 0.0)) {
        return std::nullopt;
    }
    return PixelPoint{params_.fx * X.x() / X.z() + params_.cx,
                      params_.fy * X.y() / X.z() + params_.cy};
}

std::optional<UnitRay> PinholeCamera::unproject(const PixelPoint& p) const {
    const double mx = (p.u - params_.cx) / params_.fx;
    const double my = (p.v - params_.cy) / params_.fy;
    return UnitRay(Vec3(mx, my, 1.0));
}

namespace {

double require_number(const json& j, const std::string& key) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw Error(ErrorCode::schema, "camera json: missing numeric field '" + key + "'");
    }
    return j.at(key).get<double>();
}

int require_int(const json& j, const std::string& key) {
    const double v = require_number(j, key);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) {
        throw Error(ErrorCode::schema, "camera json: field '" + key + "' must be an integer");
    }
    return i;
}

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed) {
    for (const auto& item : j.items()) {
        if (!allowed.count(item.key())) {
            throw Error(ErrorCode::schema, "camera json: unknown key '" + item.key() + "'");
        }
    }
}

}  // namespace

std::unique_ptr<CameraModel> camera_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::schema, std::string("camera json: parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("model") || !j.at("model").is_string()) {
        throw Error(ErrorCode::schema, "camera json: missing string field 'model'");
    }
    const std::string model = j.at("model").get<std::string>();
    if (model == "double_sphere") {
        reject_unknown_keys(j, {"model", "fx", "fy", "cx", "cy", "xi", "alpha", "width", "height"});
        DoubleSphereParams p{};
        p.fx = require_number(j, "fx");
        p.fy = require_number(j, "fy");
        p.cx = require_number(j, "cx");
        p.cy = require_number(j, "cy");
        p.xi = require_number(j, "xi");
        p.alpha = require_number(j, "alpha");
        p.width = require_int(j, "width");
        p.height = require_int(j, "height");
        try {
            return std::make_unique<DoubleSphereCamera>(p);
        } catch (const Error& e) {
            throw Error(ErrorCode::schema, std::string("camera json: ") + e.what());
        }
    }
    if (model == "pinhole") {
        reject_unknown_keys(j, {"model", "fx", "fy", "cx", "cy", "width", "height"});
        PinholeParams p{};
        p.fx = require_number(j, "fx");
        p.fy = require_number(j, "fy");
        p.cx = require_number(j, "cx");
        p.cy = require_number(j, "cy");
        p.width = require_int(j, "width");
        p.height = require_int(j, "height");
        try {
            return std::make_unique<PinholeCamera>(p);
        } catch (const Error& e) {
            throw Error(ErrorCode::schema, std::string("camera json: ") + e.what());
        }
    }
    throw Error(ErrorCode::schema, "camera json: unknown model '" + model + "'");
}

std::string camera_to_json(const CameraModel& camera) {
    json j;
    if (const auto* ds = dynamic_cast<const DoubleSphereCamera*>(&camera)) {
        const auto& p = ds->params();
        j = {{"model", "double_sphere"}, {"fx", p.fx}, {"fy", p.fy},
             {"cx", p.cx}, {"cy", p.cy}, {"xi", p.xi}, {"alpha", p.alpha},
             {"width", p.width}, {"height", p.height}};
    } else if (const auto* ph = dynamic_cast<const PinholeCamera*>(&camera)) {
        const auto& p = ph->params();
        j = {{"model", "pinhole"}, {"fx", p.fx}, {"fy", p.fy},
             {"cx", p.cx}, {"cy", p.cy}, {"width", p.width}, {"height", p.height}};
    } else {
        throw Error(ErrorCode::invalid_argument, "camera_to_json: unsupported model");
    }
    return j.dump();
}

DoubleSphereParams bf2m2020s23_params() {
    return DoubleSphereParams{313.21, 313.21, 638.66, 514.39, -0.18, 0.59, 1280, 1040};
}

}  // namespace sphtri
