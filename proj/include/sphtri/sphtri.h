/* Spherical two-view triangulation: C interface to the shared library.
 *
 * All functions return sphtri_status; SPHTRI_OK means the call completed.
 * Outcomes of a completed triangulation (degeneracy, cheirality) are
 * reported in sphtri_result.status, not in the call status. On failure
 * sphtri_last_error() returns a thread-local description.
 */

#ifndef SPHTRI_H
#define SPHTRI_H

#include <stddef.h>

#if defined(_WIN32)
#define SPHTRI_API __declspec(dllexport)
#else
#define SPHTRI_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sphtri_status {
    SPHTRI_OK = 0,
    SPHTRI_INVALID_ARGUMENT = 1,
    SPHTRI_CONFIG_ERROR = 2,
    SPHTRI_DATASET_ERROR = 3,
    SPHTRI_IO_ERROR = 4,
    SPHTRI_OUT_OF_DOMAIN = 5,
    SPHTRI_INTERNAL_ERROR = 6,
} sphtri_status;

SPHTRI_API const char* sphtri_status_name(sphtri_status status);

/* Thread-local message describing the most recent failure in this thread. */
SPHTRI_API const char* sphtri_last_error(void);

SPHTRI_API int sphtri_abi_version(void);

/* ---- camera models ---------------------------------------------------- */

typedef struct sphtri_camera_s sphtri_camera;

/* json: {"model": "double_sphere"|"pinhole", "fx", "fy", "cx", "cy",
 * ["xi", "alpha",] "width", "height"}; unknown keys are rejected. */
SPHTRI_API sphtri_status sphtri_camera_create_from_json(const char* json_text,
                                                        sphtri_camera** out_camera);
SPHTRI_API void sphtri_camera_destroy(sphtri_camera* camera);

/* point is a camera-frame 3-vector; pixel is (u, v). Returns
 * SPHTRI_OUT_OF_DOMAIN outside the model's valid region. */
SPHTRI_API sphtri_status sphtri_camera_project(const sphtri_camera* camera,
                                               const double point[3], double pixel[2]);
SPHTRI_API sphtri_status sphtri_camera_unproject(const sphtri_camera* camera,
                                                 const double pixel[2], double ray[3]);

/* ---- stereo frames ----------------------------------------------------- */

typedef struct sphtri_frame_s sphtri_frame;

/* Rotations are row-major world-to-camera; positions are camera centres in
 * world coordinates. Fails with SPHTRI_INVALID_ARGUMENT when the baseline
 * is shorter than 1e-12. */
SPHTRI_API sphtri_status sphtri_frame_create(const double rotation_a[9],
                                             const double position_a[3],
                                             const double rotation_b[9],
                                             const double position_b[3],
                                             sphtri_frame** out_frame);

/* Scale-free setup: camera a at the origin with identity orientation,
 * camera b at the unit baseline direction with the relative rotation. */
SPHTRI_API sphtri_status sphtri_frame_create_relative(const double relative_rotation[9],
                                                      const double baseline_direction[3],
                                                      sphtri_frame** out_frame);
SPHTRI_API void sphtri_frame_destroy(sphtri_frame* frame);

/* ---- triangulation ------------------------------------------------------ */

typedef enum sphtri_method {
    SPHTRI_METHOD_MIDPOINT = 0,
    SPHTRI_METHOD_SPH_LIN = 1,
    SPHTRI_METHOD_SPH_QUAD = 2,
    SPHTRI_METHOD_SPH_ABS = 3,
    SPHTRI_METHOD_FW = 4,
    SPHTRI_METHOD_PLN_POLY = 5,
} sphtri_method;

/* Names: midpoint, sph-lin, sph-quad, sph-abs, f-w, pln-poly. */
SPHTRI_API sphtri_status sphtri_method_from_name(const char* name, sphtri_method* out_method);
SPHTRI_API const char* sphtri_method_name(sphtri_method method);

typedef enum sphtri_result_status {
    SPHTRI_RESULT_OK = 0,
    SPHTRI_RESULT_DEGENERATE = 1,
    SPHTRI_RESULT_BEHIND_BOTH_CAMERAS = 2,
    SPHTRI_RESULT_NOT_REPRESENTABLE = 3,
} sphtri_result_status;

typedef struct sphtri_result {
    double point[3];
    double corrected_a[3]; /* camera-a frame, not renormalised */
    double corrected_b[3]; /* camera-b frame */
    double residual;       /* sum of correction norms */
    int status;            /* sphtri_result_status */
    int converged;         /* 0 only when F-W hit its iteration cap */
    int iterations;        /* F-W iteration count, 0 otherwise */
} sphtri_result;

/* ray_a and ray_b are observation directions in their camera frames; they
 * are normalised internally and must have norm > 1e-12. */
SPHTRI_API sphtri_status sphtri_triangulate(const sphtri_frame* frame, sphtri_method method,
                                            const double ray_a[3], const double ray_b[3],
                                            sphtri_result* out_result);

/* ---- experiment runners ------------------------------------------------- */

/* Each runner takes a descriptor JSON document and produces a CSV summary
 * (header: method,channel,sigma,n,mean_s2,median_s2,mean_p2,median_p2,
 * mean_r3,median_r3,mean_d_ref,max_d_ref,runtime_us). The returned string
 * must be released with sphtri_free_string. Progress goes to stderr. */
SPHTRI_API sphtri_status sphtri_run_synthetic(const char* descriptor_json, char** out_csv);
SPHTRI_API sphtri_status sphtri_run_real(const char* descriptor_json, char** out_csv);
SPHTRI_API sphtri_status sphtri_run_runtime(const char* descriptor_json, char** out_csv);
SPHTRI_API sphtri_status sphtri_run_fwcheck(const char* descriptor_json, char** out_csv);

SPHTRI_API void sphtri_free_string(char* text);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SPHTRI_H */
