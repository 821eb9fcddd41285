#include "bench.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

namespace sphtri {

using nlohmann::json;

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
}

Method method_from_name(const std::string& name) {
    if (name == "midpoint") return Method::midpoint;
    if (name == "sph-lin") return Method::sph_lin;
    if (name == "sph-quad") return Method::sph_quad;
    if (name == "sph-abs") return Method::sph_abs;
    if (name == "f-w") return Method::fw;
    if (name == "pln-poly") return Method::pln_poly;
    throw Error(ErrorCode::config, "unknown method '" + name + "'");
}

const char* method_name(Method m) {
    switch (m) {
        case Method::midpoint: return "midpoint";
        case Method::sph_lin: return "sph-lin";
        case Method::sph_quad: return "sph-quad";
        case Method::sph_abs: return "sph-abs";
        case Method::fw: return "f-w";
        case Method::pln_poly: return "pln-poly";
    }
    return "unknown";
}

TriangulationResult run_method(Method m, const Correspondence& c, const StereoFrame& f) {
    switch (m) {
        case Method::midpoint: return triangulate_midpoint(c, f);
        case Method::sph_lin: return triangulate_sph_linear(c, f);
        case Method::sph_quad: return triangulate_sph_quad(c, f);
        case Method::sph_abs: return triangulate_sph_abs(c, f);
        case Method::fw: return triangulate_fw(c, f);
        case Method::pln_poly: return triangulate_pln_poly(c, f);
    }
    throw Error(ErrorCode::invalid_argument, "run_method: bad method");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(seed ^ (a * 0x100000001b3ULL)) ^ b);
}

json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::config, what + ": json parse error: " + e.what());
    }
}

}  // namespace

ExperimentDescriptor parse_descriptor(const std::string& json_text, const std::string& kind) {
    const json j = parse_json(json_text, "descriptor");
    if (!j.is_object()) {
        throw Error(ErrorCode::config, "descriptor: expected a json object");
    }
    ExperimentDescriptor d;
    try {
        if (j.contains("seed")) d.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("trials")) d.trials = j.at("trials").get<int>();
        if (d.trials < 1) {
            throw Error(ErrorCode::config, "descriptor: trials must be >= 1");
        }
        if (!j.contains("methods") || !j.at("methods").is_array() || j.at("methods").empty()) {
            throw Error(ErrorCode::config, "descriptor: non-empty 'methods' array required");
        }
        for (const auto& m : j.at("methods")) {
            d.methods.push_back(method_from_name(m.get<std::string>()));
        }
        if (j.contains("reference_method")) {
            d.reference_method = method_from_name(j.at("reference_method").get<std::string>());
        }
        if (j.contains("scene")) {
            const json& s = j.at("scene");
            if (s.contains("extent_x")) d.scene.extent_x = s.at("extent_x").get<double>();
            if (s.contains("extent_y")) d.scene.extent_y = s.at("extent_y").get<double>();
            if (s.contains("spacing")) d.scene.spacing = s.at("spacing").get<double>();
            if (s.contains("depth")) d.scene.depth = s.at("depth").get<double>();
            if (s.contains("rotation_range_deg")) {
                d.scene.rotation_range_deg = s.at("rotation_range_deg").get<double>();
            }
        }
        if (j.contains("noise")) {
            const json& n = j.at("noise");
            if (n.contains("channel")) {
                d.channel = noise_channel_from_name(n.at("channel").get<std::string>());
            }
            if (n.contains("distribution")) {
                d.distribution =
                    noise_distribution_from_name(n.at("distribution").get<std::string>());
            }
            if (n.contains("sigmas")) {
                d.sigmas.clear();
                for (const auto& s : n.at("sigmas")) {
                    const double v = s.get<double>();
                    if (v < 0.0) {
                        throw Error(ErrorCode::config, "descriptor: sigma must be >= 0");
                    }
                    d.sigmas.push_back(v);
                }
                if (d.sigmas.empty()) {
                    throw Error(ErrorCode::config, "descriptor: 'sigmas' must be non-empty");
                }
            }
        }
        if (j.contains("camera")) {
            d.camera_json = j.at("camera").dump();
        }
        if (j.contains("dataset")) {
            const json& ds = j.at("dataset");
            d.calibration_path = ds.at("calibration").get<std::string>();
            d.correspondences_path = ds.at("correspondences").get<std::string>();
        }
        if (j.contains("points")) {
            d.runtime_points = j.at("points").get<int>();
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::config, std::string("descriptor: ") + e.what());
    }

    if (kind == "real" && (d.calibration_path.empty() || d.correspondences_path.empty())) {
        throw Error(ErrorCode::config,
                    "descriptor: 'dataset' with calibration and correspondences required");
    }
    if (kind != "real" && d.channel != NoiseChannel::sphere && d.camera_json.empty()) {
        throw Error(ErrorCode::config, "descriptor: image noise channels require 'camera'");
    }
    if (kind == "runtime" && d.runtime_points < 1) {
        throw Error(ErrorCode::config, "descriptor: 'points' must be >= 1");
    }
    return d;
}

double mean_of(const std::vector<double>& v) {
    if (v.empty()) {
        return kNan;
    }
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double median_of(std::vector<double> v) {
    if (v.empty()) {
        return kNan;
    }
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
    std::ostringstream out;
    out << "method,channel,sigma,n,mean_s2,median_s2,mean_p2,median_p2,"
           "mean_r3,median_r3,mean_d_ref,max_d_ref,runtime_us\n";
    for (const auto& r : rows) {
        out << r.method << ',' << r.channel << ',' << format_double(r.sigma) << ',' << r.n
            << ',' << format_double(r.mean_s2) << ',' << format_double(r.median_s2) << ','
            << format_double(r.mean_p2) << ',' << format_double(r.median_p2) << ','
            << format_double(r.mean_r3) << ',' << format_double(r.median_r3) << ','
            << format_double(r.mean_d_ref) << ',' << format_double(r.max_d_ref) << ','
            << format_double(r.runtime_us) << "\n";
    }
    return out.str();
}

namespace {

/// Reprojection residual on the sphere: both views, L2 against the
/// measured rays.
double s2_reprojection(const TriangulationResult& res, const Correspondence& c,
                       const StereoFrame& f) {
    const Vec3 wa = f.pose_a.orientation * (res.point - f.pose_a.position);
    const Vec3 wb = f.pose_b.orientation * (res.point - f.pose_b.position);
    if (wa.norm() < 1e-15 || wb.norm() < 1e-15) {
        return kNan;
    }
    return (wa.normalized() - c.ray_a.vec()).norm() +
           (wb.normalized() - c.ray_b.vec()).norm();
}

/// Image-space reprojection residual. For image channels the measured
/// pixels are required and the camera model projects the estimate; on the
/// sphere channel the canonical z=1 plane stands in. nullopt when the
/// estimate leaves the valid camera domain.
std::optional<double> p2_reprojection(const TriangulationResult& res, const Correspondence& c,
                                      const StereoFrame& f, const CameraModel* camera,
                                      const std::optional<PixelPoint>& pixel_a,
                                      const std::optional<PixelPoint>& pixel_b) {
    const Vec3 wa = f.pose_a.orientation * (res.point - f.pose_a.position);
    const Vec3 wb = f.pose_b.orientation * (res.point - f.pose_b.position);
    if (camera && pixel_a && pixel_b) {
        const auto pa = camera->project(wa);
        const auto pb = camera->project(wb);
        if (!pa || !pb) {
            return std::nullopt;
        }
        return std::hypot(pa->u - pixel_a->u, pa->v - pixel_a->v) +
               std::hypot(pb->u - pixel_b->u, pb->v - pixel_b->v);
    }
    const Vec3& ma = c.ray_a.vec();
    const Vec3& mb = c.ray_b.vec();
    if (wa.z() <= 1e-12 || wb.z() <= 1e-12 || ma.z() <= 1e-12 || mb.z() <= 1e-12) {
        return std::nullopt;
    }
    return std::hypot(wa.x() / wa.z() - ma.x() / ma.z(), wa.y() / wa.z() - ma.y() / ma.z()) +
           std::hypot(wb.x() / wb.z() - mb.x() / mb.z(), wb.y() / wb.z() - mb.y() / mb.z());
}

struct MethodAccumulator {
    std::vector<double> s2, p2, r3, d_ref;
    double max_d_ref = 0.0;
    long ok_count = 0;
    long excluded = 0;
    long p2_excluded = 0;
};

struct SyntheticUnit {
    Correspondence corr;
    StereoFrame frame;
    Vec3 truth;
    std::optional<PixelPoint> pixel_a, pixel_b;
};

std::vector<SyntheticUnit> build_synthetic_units(const ExperimentDescriptor& desc,
                                                 const CameraModel* camera, double sigma,
                                                 std::size_t sigma_index, int trials,
                                                 long min_points = 0) {
    std::vector<SyntheticUnit> units;
    for (int trial = 0;; ++trial) {
        if (trial >= trials && (min_points == 0 || std::cmp_greater_equal(units.size(), min_points))) {
            break;
        }
        SceneConfig cfg = desc.scene;
        Rng scene_rng(mix_seed(desc.seed, 0x5ce9eULL, static_cast<std::uint64_t>(trial)));
        const Scene scene = generate_scene(cfg, scene_rng);
        Rng noise_rng(mix_seed(desc.seed, sigma_index + 1, static_cast<std::uint64_t>(trial)));
        const NoiseSpec spec{desc.channel, desc.distribution, sigma};
        SyntheticBatch batch = make_correspondences(scene, camera, spec, noise_rng);
        const StereoFrame frame = make_stereo_frame(scene.pose_a, scene.pose_b);
        for (const auto& obs : batch.observations) {
            units.push_back(SyntheticUnit{correspondence_of(obs), frame, obs.point_true,
                                          obs.pixel_a, obs.pixel_b});
        }
        if (!batch.dropped.empty()) {
            std::cerr << "sigma " << sigma << " trial " << trial << ": dropped "
                      << batch.dropped.size() << " points\n";
        }
    }
    return units;
}

SummaryRow make_row(const std::string& method, const std::string& channel, double sigma,
                    const MethodAccumulator& acc, double runtime_us) {
    SummaryRow row;
    row.method = method;
    row.channel = channel;
    row.sigma = sigma;
    row.n = acc.ok_count;
    row.mean_s2 = mean_of(acc.s2);
    row.median_s2 = median_of(acc.s2);
    row.mean_p2 = mean_of(acc.p2);
    row.median_p2 = median_of(acc.p2);
    row.mean_r3 = mean_of(acc.r3);
    row.median_r3 = median_of(acc.r3);
    row.mean_d_ref = mean_of(acc.d_ref);
    row.max_d_ref = acc.d_ref.empty() ? kNan : acc.max_d_ref;
    row.runtime_us = runtime_us;
    return row;
}

std::unique_ptr<CameraModel> camera_for(const ExperimentDescriptor& desc) {
    if (desc.camera_json.empty()) {
        return nullptr;
    }
    try {
        return camera_from_json(desc.camera_json);
    } catch (const Error& e) {
        throw Error(ErrorCode::config, std::string("descriptor camera: ") + e.what());
    }
}

std::vector<SummaryRow> synthetic_rows(const ExperimentDescriptor& desc,
                                       bool correction_residual_in_s2) {
    const auto camera = camera_for(desc);
    std::vector<SummaryRow> rows;
    for (std::size_t si = 0; si < desc.sigmas.size(); ++si) {
        const double sigma = desc.sigmas[si];
        const auto units =
            build_synthetic_units(desc, camera.get(), sigma, si, desc.trials);
        std::cerr << "sigma " << sigma << ": " << units.size() << " correspondences\n";

        // Reference corrections for the d columns.
        std::vector<std::optional<TriangulationResult>> reference(units.size());
        for (std::size_t i = 0; i < units.size(); ++i) {
            const auto res = run_method(desc.reference_method, units[i].corr, units[i].frame);
            if (res.status == TriStatus::ok) {
                reference[i] = res;
            }
        }

        for (Method m : desc.methods) {
            MethodAccumulator acc;
            const auto t0 = std::chrono::steady_clock::now();
            std::vector<TriangulationResult> results(units.size());
            for (std::size_t i = 0; i < units.size(); ++i) {
                results[i] = run_method(m, units[i].corr, units[i].frame);
            }
            const auto t1 = std::chrono::steady_clock::now();
            for (std::size_t i = 0; i < units.size(); ++i) {
                const auto& res = results[i];
                const auto& unit = units[i];
                if (res.status != TriStatus::ok &&
                    res.status != TriStatus::behind_both_cameras) {
                    ++acc.excluded;
                    continue;
                }
                ++acc.ok_count;
                acc.s2.push_back(correction_residual_in_s2
                                     ? res.residual
                                     : s2_reprojection(res, unit.corr, unit.frame));
                acc.r3.push_back((res.point - unit.truth).norm());
                const auto p2 = p2_reprojection(res, unit.corr, unit.frame, camera.get(),
                                                unit.pixel_a, unit.pixel_b);
                if (p2) {
                    acc.p2.push_back(*p2);
                } else {
                    ++acc.p2_excluded;
                }
                if (reference[i]) {
                    const double da = (res.corrected_a - reference[i]->corrected_a).norm();
                    const double db = (res.corrected_b - reference[i]->corrected_b).norm();
                    acc.d_ref.push_back(0.5 * (da + db));
                    acc.max_d_ref = std::max({acc.max_d_ref, da, db});
                }
            }
            if (acc.excluded > 0 || acc.p2_excluded > 0) {
                std::cerr << method_name(m) << " sigma " << sigma << ": " << acc.excluded
                          << " excluded, " << acc.p2_excluded << " without P2\n";
            }
            const double us =
                std::chrono::duration<double, std::micro>(t1 - t0).count() /
                std::max<std::size_t>(1, units.size());
            rows.push_back(make_row(method_name(m), noise_channel_name(desc.channel), sigma,
                                    acc, us));
        }
    }
    return rows;
}

}  // namespace

std::vector<SummaryRow> run_synthetic_experiment(const ExperimentDescriptor& desc) {
    return synthetic_rows(desc, false);
}

std::vector<SummaryRow> run_fw_check(const ExperimentDescriptor& desc) {
    ExperimentDescriptor d = desc;
    if (d.methods.empty()) {
        d.methods = {Method::sph_quad, Method::fw};
    }
    d.reference_method = Method::sph_quad;
    return synthetic_rows(d, true);
}

std::vector<SummaryRow> run_real_experiment(const ExperimentDescriptor& desc) {
    Dataset ds = load_dataset(desc.calibration_path, desc.correspondences_path);
    std::cerr << "dataset: " << ds.records.size() << " correspondences, " << ds.poses.size()
              << " images\n";

    struct RealUnit {
        Correspondence corr;
        StereoFrame frame;
        std::optional<Vec3> truth;
        PixelPoint pixel_a, pixel_b;
    };
    std::map<std::pair<std::string, std::string>, StereoFrame> frames;
    std::vector<RealUnit> units;
    units.reserve(ds.records.size());
    for (const auto& rec : ds.records) {
        const auto key = std::make_pair(rec.image_a, rec.image_b);
        auto it = frames.find(key);
        if (it == frames.end()) {
            it = frames
                     .emplace(key, make_stereo_frame(ds.poses.at(rec.image_a),
                                                     ds.poses.at(rec.image_b)))
                     .first;
        }
        const auto ray_a = ds.camera->unproject(rec.pixel_a);
        const auto ray_b = ds.camera->unproject(rec.pixel_b);
        units.push_back(RealUnit{Correspondence{*ray_a, *ray_b}, it->second,
                                 rec.ground_truth, rec.pixel_a, rec.pixel_b});
    }

    std::vector<SummaryRow> rows;
    for (Method m : desc.methods) {
        MethodAccumulator acc;
        const auto t0 = std::chrono::steady_clock::now();
        for (const auto& unit : units) {
            const auto res = run_method(m, unit.corr, unit.frame);
            if (res.status != TriStatus::ok && res.status != TriStatus::behind_both_cameras) {
                ++acc.excluded;
                continue;
            }
            ++acc.ok_count;
            acc.s2.push_back(s2_reprojection(res, unit.corr, unit.frame));
            const auto p2 = p2_reprojection(res, unit.corr, unit.frame, ds.camera.get(),
                                            unit.pixel_a, unit.pixel_b);
            if (p2) {
                acc.p2.push_back(*p2);
            } else {
                ++acc.p2_excluded;
            }
            if (unit.truth) {
                acc.r3.push_back((res.point - *unit.truth).norm());
            }
        }
        const auto t1 = std::chrono::steady_clock::now();
        if (acc.excluded > 0 || acc.p2_excluded > 0) {
            std::cerr << method_name(m) << ": " << acc.excluded << " excluded, "
                      << acc.p2_excluded << " without P2\n";
        }
        const double us = std::chrono::duration<double, std::micro>(t1 - t0).count() /
                          std::max<std::size_t>(1, units.size());
        rows.push_back(make_row(method_name(m), "real", 0.0, acc, us));
    }
    return rows;
}

std::vector<SummaryRow> run_runtime_benchmark(const ExperimentDescriptor& desc) {
    const auto camera = camera_for(desc);
    const double sigma = desc.sigmas.front();
    const auto units = build_synthetic_units(desc, camera.get(), sigma, 0,
                                             /*trials=*/1, desc.runtime_points);
    if (std::cmp_less(units.size(), desc.runtime_points)) {
        throw Error(ErrorCode::config, "runtime: could not generate enough points");
    }
    std::cerr << "runtime: " << units.size() << " points per pass\n";

    double checksum = 0.0;
    const auto time_pass = [&](auto&& fn) {
        // Warm-up pass, then the best of five timed passes to filter
        // scheduler and frequency noise.
        for (const auto& u : units) checksum += fn(u);
        double best = std::numeric_limits<double>::infinity();
        for (int rep = 0; rep < 5; ++rep) {
            const auto t0 = std::chrono::steady_clock::now();
            for (const auto& u : units) checksum += fn(u);
            const auto t1 = std::chrono::steady_clock::now();
            best = std::min(best,
                            std::chrono::duration<double, std::micro>(t1 - t0).count());
        }
        return best / static_cast<double>(units.size());
    };

    std::vector<SummaryRow> rows;
    const auto add_row = [&](const std::string& name, double us) {
        SummaryRow row;
        row.method = name;
        row.channel = noise_channel_name(desc.channel);
        row.sigma = sigma;
        row.n = static_cast<long>(units.size());
        row.mean_s2 = row.median_s2 = row.mean_p2 = row.median_p2 = kNan;
        row.mean_r3 = row.median_r3 = row.mean_d_ref = row.max_d_ref = kNan;
        row.runtime_us = us;
        rows.push_back(row);
    };

    for (Method m : desc.methods) {
        const double us = time_pass([&](const SyntheticUnit& u) {
            return run_method(m, u.corr, u.frame).point.x();
        });
        add_row(method_name(m), us);

        switch (m) {
            case Method::sph_quad:
                add_row("sph-quad-opt", time_pass([&](const SyntheticUnit& u) {
                            const auto r = optimise_sph_quad(u.corr, u.frame);
                            return r ? r->residual : 0.0;
                        }));
                break;
            case Method::sph_abs:
                add_row("sph-abs-opt", time_pass([&](const SyntheticUnit& u) {
                            const auto r = optimise_sph_abs(u.corr, u.frame);
                            return r ? r->residual : 0.0;
                        }));
                break;
            case Method::fw:
                add_row("f-w-opt", time_pass([&](const SyntheticUnit& u) {
                            const auto r = fw_optimise(u.corr, u.frame);
                            return r ? r->residual : 0.0;
                        }));
                break;
            case Method::pln_poly:
                add_row("pln-poly-opt", time_pass([&](const SyntheticUnit& u) {
                            return pln_poly_optimise(u.corr, u.frame).residual;
                        }));
                break;
            default:
                break;
        }
    }
    if (checksum == 42.0) {
        std::cerr << "checksum " << checksum << "\n";  // keep the passes live
    }
    return rows;
}

}  // namespace sphtri
