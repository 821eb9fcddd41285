#include "sphtri/sphtri.h"

#include "bench.hpp"
#include "camera.hpp"
#include "geometry.hpp"
#include "triangulate.hpp"

#include <cstring>
#include <new>
#include <string>

namespace {

thread_local std::string g_last_error;

sphtri_status status_of(const sphtri::Error& e) {
    using sphtri::ErrorCode;
    switch (e.code()) {
        case ErrorCode::invalid_argument:
        case ErrorCode::zero_baseline:
            return SPHTRI_INVALID_ARGUMENT;
        case ErrorCode::config:
            return SPHTRI_CONFIG_ERROR;
        case ErrorCode::schema:
        case ErrorCode::bounds:
        case ErrorCode::model:
            return SPHTRI_DATASET_ERROR;
        case ErrorCode::io:
            return SPHTRI_IO_ERROR;
    }
    return SPHTRI_INTERNAL_ERROR;
}

sphtri_status fail(sphtri_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

template <typename Fn>
sphtri_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const sphtri::Error& e) {
        return fail(status_of(e), e.what());
    } catch (const std::exception& e) {
        return fail(SPHTRI_INTERNAL_ERROR, e.what());
    } catch (...) {
        return fail(SPHTRI_INTERNAL_ERROR, "unknown error");
    }
}

sphtri::Rotation rotation_from_row_major(const double m[9]) {
    sphtri::Mat3 r;
    r << m[0], m[1], m[2], m[3], m[4], m[5], m[6], m[7], m[8];
    return sphtri::Rotation::from_matrix(r);
}

char* copy_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Runner>
sphtri_status run_experiment(const char* descriptor_json, char** out_csv, const char* kind,
                             Runner&& runner) {
    if (!descriptor_json || !out_csv) {
        return fail(SPHTRI_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        const auto desc = sphtri::parse_descriptor(descriptor_json, kind);
        const auto rows = runner(desc);
        *out_csv = copy_string(sphtri::summary_csv(rows));
        return SPHTRI_OK;
    });
}

}  // namespace

struct sphtri_camera_s {
    std::unique_ptr<sphtri::CameraModel> model;
};

struct sphtri_frame_s {
    sphtri::StereoFrame frame;
};

extern "C" {

const char* sphtri_status_name(sphtri_status status) {
    switch (status) {
        case SPHTRI_OK: return "ok";
        case SPHTRI_INVALID_ARGUMENT: return "invalid_argument";
        case SPHTRI_CONFIG_ERROR: return "config_error";
        case SPHTRI_DATASET_ERROR: return "dataset_error";
        case SPHTRI_IO_ERROR: return "io_error";
        case SPHTRI_OUT_OF_DOMAIN: return "out_of_domain";
        case SPHTRI_INTERNAL_ERROR: return "internal_error";
    }
    return "unknown";
}

const char* sphtri_last_error(void) { return g_last_error.c_str(); }

int sphtri_abi_version(void) { return 1; }

sphtri_status sphtri_camera_create_from_json(const char* json_text,
                                             sphtri_camera** out_camera) {
    if (!json_text || !out_camera) {
        return fail(SPHTRI_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        auto model = sphtri::camera_from_json(json_text);
        *out_camera = new sphtri_camera_s{std::move(model)};
        return SPHTRI_OK;
    });
}

void sphtri_camera_destroy(sphtri_camera* camera) { delete camera; }

sphtri_status sphtri_camera_project(const sphtri_camera* camera, const double point[3],
                                    double pixel[2]) {
    if (!camera || !point || !pixel) {
        return fail(SPHTRI_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        const auto p = camera->model->project(sphtri::Vec3(point[0], point[1], point[2]));
        if (!p) {
            return fail(SPHTRI_OUT_OF_DOMAIN, "point outside the valid projection region");
        }
        pixel[0] = p->u;
        pixel[1] = p->v;
        return SPHTRI_OK;
    });
}

sphtri_status sphtri_camera_unproject(const sphtri_camera* camera, const double pixel[2],
                                      double ray[3]) {
    if (!camera || !pixel || !ray) {
        return fail(SPHTRI_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        const auto r = camera->model->unproject(sphtri::PixelPoint{pixel[0], pixel[1]});
        if (!r) {
            return fail(SPHTRI_OUT_OF_DOMAIN, "pixel outside the invertible region");
        }
        ray[0] = r->vec().x();
        ray[1] = r->vec().y();
        ray[2] = r->vec().z();
        return SPHTRI_OK;
    });
}

sphtri_status sphtri_frame_create(const double rotation_a[9], const double position_a[3],
                                  const double rotation_b[9], const double position_b[3],
                                  sphtri_frame** out_frame) {
    if (!rotation_a || !position_a || !rotation_b || !position_b || !out_frame) {
        return fail(SPHTRI_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        sphtri::CameraPose a{rotation_from_row_major(rotation_a),
                             sphtri::Vec3(position_a[0], position_a[1], position_a[2])};
        sphtri::CameraPose b{rotation_from_row_major(rotation_b),
                             sphtri::Vec3(position_b[0], position_b[1], position_b[2])};
        *out_frame = new sphtri_frame_s{sphtri::make_stereo_frame(a, b)};
        return SPHTRI_OK;
    });
}

sphtri_status sphtri_frame_create_relative(const double relative_rotation[9],
                                           const double baseline_direction[3],
                                           sphtri_frame** out_frame) {
    if (!relative_rotation || !baseline_direction || !out_frame) {
        return fail(SPHTRI_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        const auto rel = rotation_from_row_major(relative_rotation);
        const sphtri::UnitRay t(sphtri::Vec3(baseline_direction[0], baseline_direction[1],
                                             baseline_direction[2]));
        *out_frame = new sphtri_frame_s{sphtri::make_similarity_frame(rel, t)};
        return SPHTRI_OK;
    });
}

void sphtri_frame_destroy(sphtri_frame* frame) { delete frame; }

sphtri_status sphtri_method_from_name(const char* name, sphtri_method* out_method) {
    if (!name || !out_method) {
        return fail(SPHTRI_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        const auto m = sphtri::method_from_name(name);
        *out_method = static_cast<sphtri_method>(static_cast<int>(m));
        return SPHTRI_OK;
    });
}

const char* sphtri_method_name(sphtri_method method) {
    return sphtri::method_name(static_cast<sphtri::Method>(static_cast<int>(method)));
}

sphtri_status sphtri_triangulate(const sphtri_frame* frame, sphtri_method method,
                                 const double ray_a[3], const double ray_b[3],
                                 sphtri_result* out_result) {
    if (!frame || !ray_a || !ray_b || !out_result) {
        return fail(SPHTRI_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        const sphtri::Correspondence corr{
            sphtri::UnitRay(sphtri::Vec3(ray_a[0], ray_a[1], ray_a[2])),
            sphtri::UnitRay(sphtri::Vec3(ray_b[0], ray_b[1], ray_b[2]))};
        const auto res = sphtri::run_method(
            static_cast<sphtri::Method>(static_cast<int>(method)), corr, frame->frame);
        for (int i = 0; i < 3; ++i) {
            out_result->point[i] = res.point[i];
            out_result->corrected_a[i] = res.corrected_a[i];
            out_result->corrected_b[i] = res.corrected_b[i];
        }
        out_result->residual = res.residual;
        out_result->status = static_cast<int>(res.status);
        out_result->converged = res.converged ? 1 : 0;
        out_result->iterations = res.iterations;
        return SPHTRI_OK;
    });
}

sphtri_status sphtri_run_synthetic(const char* descriptor_json, char** out_csv) {
    return run_experiment(descriptor_json, out_csv, "synthetic",
                          sphtri::run_synthetic_experiment);
}

sphtri_status sphtri_run_real(const char* descriptor_json, char** out_csv) {
    const sphtri_status status =
        run_experiment(descriptor_json, out_csv, "real", sphtri::run_real_experiment);
    // Unreadable dataset files are dataset errors from the caller's side.
    return status == SPHTRI_IO_ERROR ? SPHTRI_DATASET_ERROR : status;
}

sphtri_status sphtri_run_runtime(const char* descriptor_json, char** out_csv) {
    return run_experiment(descriptor_json, out_csv, "runtime",
                          sphtri::run_runtime_benchmark);
}

sphtri_status sphtri_run_fwcheck(const char* descriptor_json, char** out_csv) {
    return run_experiment(descriptor_json, out_csv, "fwcheck", sphtri::run_fw_check);
}

void sphtri_free_string(char* text) { delete[] text; }

}  // extern "C"
