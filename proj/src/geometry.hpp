#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <stdexcept>
#include <string>

namespace sphtri {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

enum class ErrorCode {
    invalid_argument,
    zero_baseline,
    config,
    schema,
    bounds,
    model,
    io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Direction on the unit sphere. Construction normalises the input and
/// rejects vectors with norm below 1e-12.
class UnitRay {
public:
    explicit UnitRay(const Vec3& v);
    const Vec3& vec() const noexcept { return dir_; }

private:
    Vec3 dir_;
};

/// Proper rotation stored as a 3x3 matrix so that formulas indexing rows
/// apply directly.
class Rotation {
public:
    Rotation() : m_(Mat3::Identity()) {}

    static Rotation identity() { return Rotation(); }

    /// Validates orthonormality (1e-10) and det = +1 (1e-10).
    static Rotation from_matrix(const Mat3& m);

    /// Rodrigues formula; identity when angle == 0. Axis need not be unit.
    static Rotation from_axis_angle(const Vec3& axis, double angle);

    /// Rotation mapping unit vector `from` onto unit vector `to`.
    /// Handles the antiparallel case by composing a pi rotation about an
    /// axis orthogonal to `to`.
    static Rotation align(const Vec3& from, const Vec3& to);

    const Mat3& matrix() const noexcept { return m_; }
    Rotation transposed() const { return Rotation(m_.transpose(), unchecked{}); }

    Vec3 operator*(const Vec3& v) const { return m_ * v; }
    /// Applies the inverse rotation without materialising the transpose.
    Vec3 apply_inverse(const Vec3& v) const { return m_.transpose() * v; }
    Rotation operator*(const Rotation& o) const {
        return Rotation(m_ * o.m_, unchecked{});
    }

private:
    struct unchecked {};
    Rotation(const Mat3& m, unchecked) : m_(m) {}
    Mat3 m_;
};

/// World-to-camera convention: a world point X maps to the camera-frame
/// direction orientation * (X - position).
struct CameraPose {
    Rotation orientation;
    Vec3 position = Vec3::Zero();
};

/// Everything the triangulators share for one camera pair. The rotations
/// are fixed per pair, so the combined camera alignments are precomputed.
struct StereoFrame {
    CameraPose pose_a;
    CameraPose pose_b;
    Vec3 baseline = Vec3::Zero();  // C_b - C_a, world frame
    double baseline_length = 0.0;
    UnitRay epipole;               // baseline direction in camera-a frame
    Rotation basis_rotation;       // maps epipole onto +X
    Rotation relative_rotation;    // R_a * R_b^T: camera-b rays into camera-a orientation
    Rotation aligned_rotation_b;   // basis_rotation * relative_rotation
    Rotation aligned_from_world;   // basis_rotation * R_a
};

/// Throws Error(zero_baseline) when the camera centres coincide (< 1e-12).
StereoFrame make_stereo_frame(const CameraPose& pose_a, const CameraPose& pose_b);

/// Scale-ambiguous setup from a relative rotation and a unit baseline
/// direction: C_a = 0, C_b = t_hat, R_a = I, R_b = rel.
StereoFrame make_similarity_frame(const Rotation& rel, const UnitRay& baseline_dir);

}  // namespace sphtri
