#pragma once

#include "camera.hpp"
#include "geometry.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sphtri {

struct CorrespondenceRecord {
    long point_id = 0;
    std::string image_a;
    std::string image_b;
    PixelPoint pixel_a;
    PixelPoint pixel_b;
    std::optional<Vec3> ground_truth;
};

struct Dataset {
    std::shared_ptr<CameraModel> camera;
    std::map<std::string, CameraPose> poses;  // by image id
    std::vector<CorrespondenceRecord> records;
};

/// Calibration JSON: {"camera": {...}, "images": [{"id", "rotation"
/// (row-major, world-to-camera), "translation"}, ...]} with
/// X_cam = R X_world + t, so the camera centre is -R^T t.
/// Correspondence CSV header: point_id,image_a,ua,va,image_b,ub,vb[,gx,gy,gz].
///
/// Throws Error(schema) on malformed input, Error(bounds) for pixels
/// outside the declared image, Error(model) when a pixel cannot be
/// unprojected by the declared camera, Error(io) for file problems.
Dataset load_dataset(const std::string& calibration_path,
                     const std::string& correspondences_path);

void write_calibration(const Dataset& dataset, const std::string& path);
void write_correspondences(const std::vector<CorrespondenceRecord>& records,
                           const std::string& path);

struct ResultRecord {
    std::string method;
    long point_id = 0;
    double residual_s2 = 0.0;
    double residual_p2 = 0.0;
    double error_r3 = 0.0;
    std::string status;
};

/// CSV header: method,point_id,residual_s2,residual_p2,error_r3,status.
/// Floats use shortest round-trip formatting.
void write_results(const std::vector<ResultRecord>& records, const std::string& path);
std::vector<ResultRecord> load_results(const std::string& path);

std::string format_double(double v);

}  // namespace sphtri
