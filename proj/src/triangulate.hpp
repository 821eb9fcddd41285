#pragma once

#include "geometry.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace sphtri {

/// Ray pair observing one 3D point, each in its own camera frame.
struct Correspondence {
    UnitRay ray_a;
    UnitRay ray_b;
};

enum class TriStatus {
    ok,
    degenerate_no_solution,
    behind_both_cameras,
    not_representable,
};

const char* tri_status_name(TriStatus s);

/// Epipolar-plane pencil parameter. The unnormalised plane normal is
/// (0, lambda, 1) when axis_swapped, (0, 1, lambda) otherwise, expressed
/// in the epipole-aligned camera-a frame.
struct PlaneParam {
    double lambda = 0.0;
    bool axis_swapped = false;
    Vec3 normal() const {
        return axis_swapped ? Vec3(0.0, lambda, 1.0) : Vec3(0.0, 1.0, lambda);
    }
};

struct TriangulationResult {
    Vec3 point = Vec3::Zero();
    Vec3 corrected_a = Vec3::Zero();  // camera-a frame, not renormalised
    Vec3 corrected_b = Vec3::Zero();  // camera-b frame, not renormalised
    Vec3 plane_normal = Vec3::Zero();  // unit epipolar-plane normal, camera-a frame
    double residual = 0.0;             // sum of correction norms
    TriStatus status = TriStatus::ok;
    bool converged = true;  // false only for F-W hitting max_iter
    int iterations = 0;     // F-W iteration count
};

struct MidpointScalars {
    double alpha_a = 0.0;
    double alpha_b = 0.0;
};

/// Closed-form distances along two world-frame rays to their closest
/// approach, with t the camera-a -> camera-b baseline. nullopt when the
/// rays are parallel (denominator below 1e-14).
std::optional<MidpointScalars> midpoint_scalars(const Vec3& ray_a_world,
                                                const Vec3& ray_b_world,
                                                const Vec3& t);

TriangulationResult triangulate_midpoint(const Correspondence& c, const StereoFrame& f);

/// Linear triangulation from two or more observations; least squares via
/// the pseudo-inverse. Degenerate when the stacked system is rank
/// deficient (sigma_min/sigma_max < 1e-12).
TriangulationResult triangulate_sph_linear(
    std::span<const std::pair<UnitRay, CameraPose>> observations);
TriangulationResult triangulate_sph_linear(const Correspondence& c, const StereoFrame& f);

/// Both rays rotated into the epipole-aligned camera-a frame, plus the
/// pencil-axis choice (swapped when |v_a.y| > |v_a.z|).
struct AlignedPair {
    Vec3 v_a;
    Vec3 v_b;
    bool swapped;
};

AlignedPair align_pair(const Correspondence& c, const StereoFrame& f);

/// Optimisation output in the epipole-aligned frame.
struct SphOptimised {
    PlaneParam plane;
    Vec3 corrected_a;  // aligned frame, not renormalised
    Vec3 corrected_b;
    double residual;
};

/// Closed-form minimiser of the summed squared ray-to-plane distances over
/// the epipolar-plane pencil. nullopt when the cost is constant (b = 0 and
/// a = c).
std::optional<SphOptimised> optimise_sph_quad(const Correspondence& c, const StereoFrame& f);

/// Closed-form minimiser of the summed ray-to-plane distance magnitudes.
/// Candidates are the two quadratic roots plus the two planes through each
/// observed ray; the s2-smallest wins.
std::optional<SphOptimised> optimise_sph_abs(const Correspondence& c, const StereoFrame& f);

TriangulationResult triangulate_sph_quad(const Correspondence& c, const StereoFrame& f);
TriangulationResult triangulate_sph_abs(const Correspondence& c, const StereoFrame& f);

/// Convergence: the update step falls below tol and the cost change falls
/// below tol relative to the current cost.
struct FwOptions {
    double tol = 0.01;
    int max_iter = 100;
};

struct FwOptimised {
    Vec3 corrected_a;   // camera-a frame
    Vec3 corrected_b;   // camera-b frame
    Vec3 plane_normal;  // unit, camera-a frame
    double residual;
    bool converged;
    int iterations;
};

/// Iterative minimiser of the same constrained cost: Gauss-Helmert steps
/// on the ray pair with corrections parameterised in the tangent planes of
/// the unit sphere, renormalised each iteration, then an exact orthogonal
/// projection of the measured rays onto the converged epipolar plane.
std::optional<FwOptimised> fw_optimise(const Correspondence& c, const StereoFrame& f,
                                       const FwOptions& opt = {});

TriangulationResult triangulate_fw(const Correspondence& c, const StereoFrame& f,
                                   const FwOptions& opt = {});

struct PlnPolyOptimised {
    TriStatus status = TriStatus::ok;
    Eigen::Vector2d corrected_a = Eigen::Vector2d::Zero();  // z=1 plane, camera a
    Eigen::Vector2d corrected_b = Eigen::Vector2d::Zero();  // z=1 plane, camera b
    double residual = 0.0;
};

/// Polynomial correction on the z=1 planes (degree-6 root selection over
/// the epipolar-line pencil). not_representable when a ray has z <= 0.
PlnPolyOptimised pln_poly_optimise(const Correspondence& c, const StereoFrame& f);

TriangulationResult triangulate_pln_poly(const Correspondence& c, const StereoFrame& f);

}  // namespace sphtri
