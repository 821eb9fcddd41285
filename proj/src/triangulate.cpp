#include "triangulate.hpp"

#include "poly.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <limits>

namespace sphtri {

const char* tri_status_name(TriStatus s) {
    switch (s) {
        case TriStatus::ok: return "ok";
        case TriStatus::degenerate_no_solution: return "degenerate";
        case TriStatus::behind_both_cameras: return "behind_both";
        case TriStatus::not_representable: return "not_representable";
    }
    return "unknown";
}

std::optional<MidpointScalars> midpoint_scalars(const Vec3& u, const Vec3& v, const Vec3& t) {
    const double uu = u.dot(u);
    const double vv = v.dot(v);
    const double uv = u.dot(v);
    const double denom = uu * vv - uv * uv;
    if (denom < 1e-14) {
        return std::nullopt;
    }
    const double ut = u.dot(t);
    const double vt = v.dot(t);
    return MidpointScalars{(vv * ut - uv * vt) / denom, (uv * ut - uu * vt) / denom};
}

namespace {

/// Midpoint of the closest approach of two camera-frame rays; shared final
/// stage of every method. Rays may be non-unit.
void midpoint_from_camera_rays(const Vec3& ray_a_cam, const Vec3& ray_b_cam,
                               const StereoFrame& f, TriangulationResult& out) {
    const Vec3 u = f.pose_a.orientation.apply_inverse(ray_a_cam);
    const Vec3 v = f.pose_b.orientation.apply_inverse(ray_b_cam);
    const auto scalars = midpoint_scalars(u, v, f.baseline);
    if (!scalars) {
        out.status = TriStatus::degenerate_no_solution;
        return;
    }
    const Vec3 pa = f.pose_a.position + scalars->alpha_a * u;
    const Vec3 pb = f.pose_b.position + scalars->alpha_b * v;
    out.point = 0.5 * (pa + pb);
    if (scalars->alpha_a < 0.0 && scalars->alpha_b < 0.0) {
        out.status = TriStatus::behind_both_cameras;
    }
}

}  // namespace

TriangulationResult triangulate_midpoint(const Correspondence& c, const StereoFrame& f) {
    TriangulationResult out;
    out.corrected_a = c.ray_a.vec();
    out.corrected_b = c.ray_b.vec();
    midpoint_from_camera_rays(out.corrected_a, out.corrected_b, f, out);
    return out;
}

TriangulationResult triangulate_sph_linear(
    std::span<const std::pair<UnitRay, CameraPose>> observations) {
    TriangulationResult out;
    if (observations.size() < 2) {
        throw Error(ErrorCode::invalid_argument,
                    "triangulate_sph_linear: at least two observations required");
    }
    const auto n = static_cast<Eigen::Index>(observations.size());
    Eigen::MatrixXd A(2 * n, 3);
    Eigen::VectorXd b(2 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Vec3& u = observations[i].first.vec();
        const CameraPose& pose = observations[i].second;
        const Mat3& R = pose.orientation.matrix();
        const Eigen::RowVector3d row1 = u.x() * R.row(2) - u.z() * R.row(0);
        const Eigen::RowVector3d row2 = u.y() * R.row(2) - u.z() * R.row(1);
        A.row(2 * i) = row1;
        A.row(2 * i + 1) = row2;
        b(2 * i) = row1 * pose.position;
        b(2 * i + 1) = row2 * pose.position;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (!(sv(0) > 0.0) || sv(2) / sv(0) < 1e-12) {
        out.status = TriStatus::degenerate_no_solution;
        return out;
    }
    out.point = svd.solve(b);
    return out;
}

TriangulationResult triangulate_sph_linear(const Correspondence& c, const StereoFrame& f) {
    const std::pair<UnitRay, CameraPose> obs[2] = {{c.ray_a, f.pose_a}, {c.ray_b, f.pose_b}};
    TriangulationResult out = triangulate_sph_linear(std::span(obs, 2));
    out.corrected_a = c.ray_a.vec();
    out.corrected_b = c.ray_b.vec();
    return out;
}

AlignedPair align_pair(const Correspondence& c, const StereoFrame& f) {
    const Vec3 v_a = f.basis_rotation * c.ray_a.vec();
    const Vec3 v_b = f.aligned_rotation_b * c.ray_b.vec();
    const bool swapped = std::abs(v_a.y()) > std::abs(v_a.z());
    return AlignedPair{v_a, v_b, swapped};
}

namespace {

/// Plane-pencil working components: the distance numerator of a ray to the
/// plane with parameter lambda is p + lambda q in both axis conventions.
struct PencilComponents {
    double p, q;    // first ray
    double pp, qq;  // second ray
};

PencilComponents pencil_components(const AlignedPair& ap) {
    if (ap.swapped) {
        return {ap.v_a.z(), ap.v_a.y(), ap.v_b.z(), ap.v_b.y()};
    }
    return {ap.v_a.y(), ap.v_a.z(), ap.v_b.y(), ap.v_b.z()};
}

double cost_sq(const PencilComponents& pc, double lambda) {
    const double da = pc.p + lambda * pc.q;
    const double db = pc.pp + lambda * pc.qq;
    return (da * da + db * db) / (1.0 + lambda * lambda);
}

double cost_abs(const PencilComponents& pc, double lambda) {
    return (std::abs(pc.p + lambda * pc.q) + std::abs(pc.pp + lambda * pc.qq)) /
           std::sqrt(1.0 + lambda * lambda);
}

SphOptimised project_onto_plane(const AlignedPair& ap, double lambda) {
    const PlaneParam plane{lambda, ap.swapped};
    const Vec3 n = plane.normal();
    const double nn = n.dot(n);
    const Vec3 ca = ap.v_a - (ap.v_a.dot(n) / nn) * n;
    const Vec3 cb = ap.v_b - (ap.v_b.dot(n) / nn) * n;
    const double residual = (ca - ap.v_a).norm() + (cb - ap.v_b).norm();
    return SphOptimised{plane, ca, cb, residual};
}

}  // namespace

std::optional<SphOptimised> optimise_sph_quad(const Correspondence& c, const StereoFrame& f) {
    const AlignedPair ap = align_pair(c, f);
    const PencilComponents pc = pencil_components(ap);

    const double a = pc.p * pc.p + pc.pp * pc.pp;
    const double ccoef = pc.q * pc.q + pc.qq * pc.qq;
    const double b = 2.0 * (pc.p * pc.q + pc.pp * pc.qq);
    const double scale = a + ccoef;

    double lambda;
    if (std::abs(b) <= 1e-14 * scale) {
        if (std::abs(a - ccoef) <= 1e-14 * scale) {
            return std::nullopt;  // s'(lambda) vanishes identically
        }
        lambda = 0.0;
    } else {
        // Roots of b l^2 + 2(a-c) l - b; their product is -1, so the stable
        // large-magnitude root also yields the other one exactly.
        const double d = a - ccoef;
        const double disc = std::sqrt(d * d + b * b);
        const double l1 = (d >= 0.0) ? (-d - disc) / b : (-d + disc) / b;
        const double l2 = -1.0 / l1;
        lambda = (cost_sq(pc, l1) <= cost_sq(pc, l2)) ? l1 : l2;
    }
    return project_onto_plane(ap, lambda);
}

std::optional<SphOptimised> optimise_sph_abs(const Correspondence& c, const StereoFrame& f) {
    const AlignedPair ap = align_pair(c, f);
    const PencilComponents pc = pencil_components(ap);

    // Quadratic from squaring the derivative condition: A l^2 + B l + C = 0.
    const double A = pc.p * pc.p - pc.pp * pc.pp;
    const double B = 2.0 * (pc.pp * pc.qq - pc.p * pc.q);
    const double C = pc.q * pc.q - pc.qq * pc.qq;
    const double scale =
        pc.p * pc.p + pc.q * pc.q + pc.pp * pc.pp + pc.qq * pc.qq;
    const double tol = 1e-14 * scale;
    const double comp_tol = 1e-14 * std::sqrt(scale);

    double candidates[4];
    int n_cand = 0;
    if (std::abs(A) > tol) {
        const double num = pc.p * pc.q - pc.pp * pc.qq;
        const double root_shift = pc.pp * pc.q - pc.p * pc.qq;
        candidates[n_cand++] = (num + root_shift) / A;
        candidates[n_cand++] = (num - root_shift) / A;
    } else if (std::abs(B) > tol) {
        candidates[n_cand++] = -C / B;  // surviving linear root
    }
    // The magnitude sum is non-differentiable where the plane contains one
    // of the rays; those planes can carry the minimum and are not roots of
    // the squared condition.
    if (std::abs(pc.q) > comp_tol) {
        candidates[n_cand++] = -pc.p / pc.q;
    }
    if (std::abs(pc.qq) > comp_tol) {
        candidates[n_cand++] = -pc.pp / pc.qq;
    }

    double best = 0.0;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_cand; ++i) {
        if (!std::isfinite(candidates[i])) {
            continue;
        }
        const double cost = cost_abs(pc, candidates[i]);
        if (std::isfinite(cost) && cost < best_cost) {
            best_cost = cost;
            best = candidates[i];
        }
    }
    if (!std::isfinite(best_cost)) {
        return std::nullopt;  // rays along the baseline: every plane fits
    }
    return project_onto_plane(ap, best);
}

namespace {

TriangulationResult finish_spherical(const StereoFrame& f, const SphOptimised& opt) {
    TriangulationResult out;
    out.corrected_a = f.basis_rotation.apply_inverse(opt.corrected_a);
    out.corrected_b = f.aligned_rotation_b.apply_inverse(opt.corrected_b);
    out.plane_normal = f.basis_rotation.apply_inverse(opt.plane.normal().normalized());
    out.residual = opt.residual;

    // The midpoint stage runs in the aligned frame, where the baseline is
    // (s, 0, 0) and the corrected rays are already at hand.
    const Vec3& u = opt.corrected_a;
    const Vec3& v = opt.corrected_b;
    const double s = f.baseline_length;
    const double uu = u.squaredNorm();
    const double vv = v.squaredNorm();
    const double uv = u.dot(v);
    const double denom = uu * vv - uv * uv;
    if (denom < 1e-14) {
        out.status = TriStatus::degenerate_no_solution;
        return out;
    }
    const double ut = s * u.x();
    const double vt = s * v.x();
    const double alpha_a = (vv * ut - uv * vt) / denom;
    const double alpha_b = (uv * ut - uu * vt) / denom;
    const Vec3 mid_aligned = 0.5 * (alpha_a * u + alpha_b * v + Vec3(s, 0.0, 0.0));
    out.point = f.aligned_from_world.apply_inverse(mid_aligned) + f.pose_a.position;
    if (alpha_a < 0.0 && alpha_b < 0.0) {
        out.status = TriStatus::behind_both_cameras;
    }
    return out;
}

// One pipeline body for both direct methods keeps the shared stages on an
// identical code path.
TriangulationResult direct_spherical(const Correspondence& c, const StereoFrame& f,
                                     bool abs_cost) {
    const auto opt = abs_cost ? optimise_sph_abs(c, f) : optimise_sph_quad(c, f);
    if (!opt) {
        TriangulationResult out;
        out.status = TriStatus::degenerate_no_solution;
        return out;
    }
    return finish_spherical(f, *opt);
}

}  // namespace

TriangulationResult triangulate_sph_quad(const Correspondence& c, const StereoFrame& f) {
    return direct_spherical(c, f, false);
}

TriangulationResult triangulate_sph_abs(const Correspondence& c, const StereoFrame& f) {
    return direct_spherical(c, f, true);
}

std::optional<FwOptimised> fw_optimise(const Correspondence& c, const StereoFrame& f,
                                       const FwOptions& opt) {
    // Working frame: camera-a orientation for both rays.
    const Vec3 m_a = c.ray_a.vec();
    const Vec3 m_b = f.relative_rotation * c.ray_b.vec();
    const Vec3 bhat = f.epipole.vec();

    // General Gauss-Helmert condition adjustment, kept in the textbook
    // shape: one condition g(l) = bhat . (u_a x u_b) on the stacked
    // observation vector l in R^6, isotropic observation covariance
    // (the corrected pair is not confined to the sphere, matching the
    // optimised cost), corrections v = Sigma B^T mu relinearised at the
    // current estimate.
    Eigen::VectorXd l_meas(6);
    l_meas << m_a, m_b;
    const Eigen::MatrixXd sigma = Eigen::MatrixXd::Identity(6, 6);

    Eigen::VectorXd l = l_meas;
    double prev_cost = std::numeric_limits<double>::infinity();
    bool converged = false;
    int iterations = 0;

    for (int k = 1; k <= opt.max_iter; ++k) {
        iterations = k;
        const Vec3 ua = l.segment<3>(0);
        const Vec3 ub = l.segment<3>(3);

        Eigen::MatrixXd B(1, 6);
        B.block<1, 3>(0, 0) = ub.cross(bhat).transpose();
        B.block<1, 3>(0, 3) = bhat.cross(ua).transpose();

        const Eigen::MatrixXd normal = B * sigma * B.transpose();
        if (normal(0, 0) < 1e-20) {
            return std::nullopt;  // both rays along the baseline
        }
        // Misclosure at the measurements for the current linearisation.
        Eigen::VectorXd w(1);
        w(0) = bhat.dot(ua.cross(ub)) + (B * (l_meas - l))(0);
        const Eigen::VectorXd mu = normal.ldlt().solve(w);
        const Eigen::VectorXd v = -sigma * B.transpose() * mu;

        const Eigen::VectorXd next = l_meas + v;
        const double step = (next - l).norm();
        l = next;

        const double cost = v.squaredNorm();
        // Cost decrease measured relative to the cost scale, so convergence
        // depth tracks the noise level.
        if (step < opt.tol && std::abs(cost - prev_cost) < opt.tol * std::max(cost, 1e-12)) {
            converged = true;
            break;
        }
        prev_cost = cost;
    }
    const Vec3 ua = l.segment<3>(0);
    const Vec3 ub = l.segment<3>(3);

    const Vec3 n_dir = bhat.cross(ua + ub);
    if (n_dir.norm() < 1e-12) {
        return std::nullopt;
    }
    const Vec3 n = n_dir.normalized();
    const Vec3 ca = m_a - m_a.dot(n) * n;
    const Vec3 cb_working = m_b - m_b.dot(n) * n;

    FwOptimised result;
    result.corrected_a = ca;
    result.corrected_b = f.relative_rotation.apply_inverse(cb_working);
    result.plane_normal = n;
    result.residual = (ca - m_a).norm() + (cb_working - m_b).norm();
    result.converged = converged;
    result.iterations = iterations;
    return result;
}

TriangulationResult triangulate_fw(const Correspondence& c, const StereoFrame& f,
                                   const FwOptions& opt) {
    const auto fw = fw_optimise(c, f, opt);
    TriangulationResult out;
    if (!fw) {
        out.status = TriStatus::degenerate_no_solution;
        return out;
    }
    out.corrected_a = fw->corrected_a;
    out.corrected_b = fw->corrected_b;
    out.plane_normal = fw->plane_normal;
    out.residual = fw->residual;
    out.converged = fw->converged;
    out.iterations = fw->iterations;
    midpoint_from_camera_rays(out.corrected_a, out.corrected_b, f, out);
    return out;
}

namespace {

Mat3 skew(const Vec3& v) {
    Mat3 m;
    m << 0.0, -v.z(), v.y(),
         v.z(), 0.0, -v.x(),
         -v.y(), v.x(), 0.0;
    return m;
}

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (size_t i = 0; i < a.size(); ++i) {
        for (size_t j = 0; j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

struct HsCorrection {
    Eigen::Vector2d a;
    Eigen::Vector2d b;
};

/// Hartley-Sturm correction of a planar correspondence: transforms the
/// fundamental matrix into the canonical pencil form, minimises the summed
/// squared planar distances over the degree-6 root set, and projects each
/// point onto its optimal epipolar line.
std::optional<HsCorrection> hs_correct(const Eigen::Vector2d& x, const Eigen::Vector2d& xp,
                                       const Mat3& F_in) {
    Mat3 F = F_in / F_in.norm();

    // Fold the point-centring translations into F (T'^-T F T^-1).
    Mat3 Tinv = Mat3::Identity();
    Tinv(0, 2) = x.x();
    Tinv(1, 2) = x.y();
    Mat3 TpinvT = Mat3::Identity();
    TpinvT(2, 0) = xp.x();
    TpinvT(2, 1) = xp.y();
    F = TpinvT * F * Tinv;

    Eigen::JacobiSVD<Mat3> svd(F, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Vec3 e = svd.matrixV().col(2);
    Vec3 ep = svd.matrixU().col(2);
    const double se = std::hypot(e.x(), e.y());
    const double sep = std::hypot(ep.x(), ep.y());
    if (se < 1e-12 || sep < 1e-12) {
        return std::nullopt;  // epipole coincides with a measured point
    }
    e /= se;
    ep /= sep;

    Mat3 R = Mat3::Identity();
    R(0, 0) = e.x();
    R(0, 1) = e.y();
    R(1, 0) = -e.y();
    R(1, 1) = e.x();
    Mat3 Rp = Mat3::Identity();
    Rp(0, 0) = ep.x();
    Rp(0, 1) = ep.y();
    Rp(1, 0) = -ep.y();
    Rp(1, 1) = ep.x();
    F = Rp * F * R.transpose();

    const double fe = e.z();
    const double fep = ep.z();
    const double a = F(1, 1);
    const double b = F(1, 2);
    const double cc = F(2, 1);
    const double d = F(2, 2);

    // g(t) = t((at+b)^2 + f'^2 (ct+d)^2)^2 - (ad-bc)(1+f^2 t^2)^2 (at+b)(ct+d)
    const std::vector<double> p1{b, a};
    const std::vector<double> p2{d, cc};
    std::vector<double> q = poly_mul(p1, p1);
    {
        const std::vector<double> p22 = poly_mul(p2, p2);
        for (size_t i = 0; i < q.size(); ++i) {
            q[i] += fep * fep * p22[i];
        }
    }
    std::vector<double> term1 = poly_mul(q, q);
    term1.insert(term1.begin(), 0.0);  // multiply by t
    const std::vector<double> r{1.0, 0.0, fe * fe};
    std::vector<double> term2 = poly_mul(poly_mul(r, r), poly_mul(p1, p2));
    const double det = a * d - b * cc;
    std::vector<double> g(7, 0.0);
    for (size_t i = 0; i < term1.size() && i < 7; ++i) {
        g[i] += term1[i];
    }
    for (size_t i = 0; i < term2.size() && i < 7; ++i) {
        g[i] -= det * term2[i];
    }

    const auto cost = [&](double t) {
        const double at_b = a * t + b;
        const double ct_d = cc * t + d;
        return t * t / (1.0 + fe * fe * t * t) +
               ct_d * ct_d / (at_b * at_b + fep * fep * ct_d * ct_d);
    };

    double best_t = 0.0;
    double best_cost = cost(0.0);
    for (double t : real_roots(g)) {
        const double ct = cost(t);
        if (ct < best_cost) {
            best_cost = ct;
            best_t = t;
        }
    }
    bool use_infinity = false;
    if (fe != 0.0) {
        const double cost_inf =
            1.0 / (fe * fe) + cc * cc / (a * a + fep * fep * cc * cc);
        if (cost_inf < best_cost) {
            use_infinity = true;
        }
    }

    // Closest point on line (l0,l1,l2) to the origin: (-l0 l2, -l1 l2, l0^2 + l1^2).
    Vec3 xhat, xphat;
    if (use_infinity) {
        xhat = Vec3(fe, 0.0, fe * fe);
        const Vec3 lp(-fep * cc, a, cc);
        xphat = Vec3(-lp.x() * lp.z(), -lp.y() * lp.z(), lp.x() * lp.x() + lp.y() * lp.y());
    } else {
        const double t = best_t;
        xhat = Vec3(t * t * fe, t, t * t * fe * fe + 1.0);
        const Vec3 lp(-fep * (cc * t + d), a * t + b, cc * t + d);
        xphat = Vec3(-lp.x() * lp.z(), -lp.y() * lp.z(), lp.x() * lp.x() + lp.y() * lp.y());
    }

    xhat = Tinv * (R.transpose() * xhat);
    xphat = TpinvT.transpose() * (Rp.transpose() * xphat);
    if (std::abs(xhat.z()) < 1e-14 || std::abs(xphat.z()) < 1e-14) {
        return std::nullopt;  // corrected point escaped to infinity
    }
    return HsCorrection{xhat.hnormalized(), xphat.hnormalized()};
}

}  // namespace

PlnPolyOptimised pln_poly_optimise(const Correspondence& c, const StereoFrame& f) {
    PlnPolyOptimised out;
    const Vec3& ua = c.ray_a.vec();
    const Vec3& ub = c.ray_b.vec();
    if (ua.z() <= 0.0 || ub.z() <= 0.0) {
        out.status = TriStatus::not_representable;
        return out;
    }
    const Eigen::Vector2d xa = ua.hnormalized();
    const Eigen::Vector2d xb = ub.hnormalized();

    // x_b^T F x_a = 0 for exact correspondences.
    const Mat3 F = f.pose_b.orientation.matrix() * skew(f.baseline) *
                   f.pose_a.orientation.matrix().transpose();
    const auto corr = hs_correct(xa, xb, F);
    if (!corr) {
        out.status = TriStatus::degenerate_no_solution;
        return out;
    }
    out.corrected_a = corr->a;
    out.corrected_b = corr->b;
    out.residual = (corr->a - xa).norm() + (corr->b - xb).norm();
    return out;
}

TriangulationResult triangulate_pln_poly(const Correspondence& c, const StereoFrame& f) {
    const PlnPolyOptimised opt = pln_poly_optimise(c, f);
    TriangulationResult out;
    if (opt.status != TriStatus::ok) {
        out.status = opt.status;
        return out;
    }
    out.corrected_a = Vec3(opt.corrected_a.x(), opt.corrected_a.y(), 1.0);
    out.corrected_b = Vec3(opt.corrected_b.x(), opt.corrected_b.y(), 1.0);
    out.residual = opt.residual;
    midpoint_from_camera_rays(out.corrected_a, out.corrected_b, f, out);
    return out;
}

}  // namespace sphtri
