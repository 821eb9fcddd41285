#include "geometry.hpp"

#include <cmath>

namespace sphtri {

namespace {
constexpr double kMinNorm = 1e-12;
constexpr double kRotationTol = 1e-10;
}  // namespace

UnitRay::UnitRay(const Vec3& v) {
    const double n = v.norm();
    if (!(n > kMinNorm) || !v.allFinite()) {
        throw Error(ErrorCode::invalid_argument,
                    "UnitRay: input norm below 1e-12 or non-finite");
    }
    dir_ = v / n;
}

Rotation Rotation::from_matrix(const Mat3& m) {
    if (!m.allFinite()) {
        throw Error(ErrorCode::invalid_argument, "Rotation: non-finite matrix");
    }
    const Mat3 gram = m.transpose() * m;
    if ((gram - Mat3::Identity()).cwiseAbs().maxCoeff() > kRotationTol) {
        throw Error(ErrorCode::invalid_argument, "Rotation: matrix is not orthonormal");
    }
    if (std::abs(m.determinant() - 1.0) > kRotationTol) {
        throw Error(ErrorCode::invalid_argument, "Rotation: determinant is not +1");
    }
    return Rotation(m, unchecked{});
}

Rotation Rotation::from_axis_angle(const Vec3& axis, double angle) {
    if (angle == 0.0) {
        return Rotation();
    }
    const double n = axis.norm();
    if (!(n > kMinNorm)) {
        throw Error(ErrorCode::invalid_argument,
                    "Rotation::from_axis_angle: zero axis with nonzero angle");
    }
    const Vec3 a = axis / n;
    const double s = std::sin(angle);
    const double c = std::cos(angle);
    Mat3 k;
    k << 0.0, -a.z(), a.y(),
         a.z(), 0.0, -a.x(),
         -a.y(), a.x(), 0.0;
    const Mat3 m = Mat3::Identity() + s * k + (1.0 - c) * (k * k);
    return Rotation(m, unchecked{});
}

Rotation Rotation::align(const Vec3& from, const Vec3& to) {
    const double c = from.dot(to);
    if (c < -0.9) {
        // Near antiparallel: first flip with a pi rotation about an axis
        // orthogonal to `to`, then close the remaining gap.
        Vec3 ortho = (std::abs(to.y()) < 0.9) ? Vec3::UnitY() : Vec3::UnitZ();
        ortho = (ortho - ortho.dot(to) * to).normalized();
        const Rotation flip = Rotation::from_axis_angle(ortho, M_PI);
        const Vec3 flipped = flip * from;
        return Rotation::align(flipped, to) * flip;
    }
    // Quaternion (1 + from.to, from x to) rotates `from` onto `to`.
    Eigen::Quaterniond q;
    q.w() = 1.0 + c;
    q.vec() = from.cross(to);
    const double n = q.norm();
    if (n < kMinNorm) {
        return Rotation();
    }
    q.coeffs() /= n;
    return Rotation(q.toRotationMatrix(), unchecked{});
}

StereoFrame make_stereo_frame(const CameraPose& pose_a, const CameraPose& pose_b) {
    const Vec3 t = pose_b.position - pose_a.position;
    if (t.norm() < 1e-12) {
        throw Error(ErrorCode::zero_baseline,
                    "make_stereo_frame: camera centres coincide, triangulation undefined");
    }
    const UnitRay epipole(pose_a.orientation * t);
    const Rotation basis = Rotation::align(epipole.vec(), Vec3::UnitX());
    const Rotation rel = pose_a.orientation * pose_b.orientation.transposed();
    return StereoFrame{pose_a,  pose_b,      t,   t.norm(), epipole,
                       basis,   rel,         basis * rel,   basis * pose_a.orientation};
}

StereoFrame make_similarity_frame(const Rotation& rel, const UnitRay& baseline_dir) {
    CameraPose a{Rotation::identity(), Vec3::Zero()};
    CameraPose b{rel, baseline_dir.vec()};
    return make_stereo_frame(a, b);
}

}  // namespace sphtri
