#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sphtri/sphtri.h>

#include <cmath>
#include <cstring>
#include <string>

namespace {

const char* kDsJson =
    R"({"model":"double_sphere","fx":313.21,"fy":313.21,"cx":638.66,"cy":514.39,)"
    R"("xi":-0.18,"alpha":0.59,"width":1280,"height":1040})";

constexpr double kIdentity[9] = {1, 0, 0, 0, 1, 0, 0, 0, 1};

}  // namespace

TEST_CASE("abi and status names") {
    CHECK(sphtri_abi_version() == 1);
    CHECK(std::string(sphtri_status_name(SPHTRI_OK)) == "ok");
    CHECK(std::string(sphtri_status_name(SPHTRI_CONFIG_ERROR)) == "config_error");
}

TEST_CASE("camera create, project, unproject") {
    sphtri_camera* cam = nullptr;
    REQUIRE(sphtri_camera_create_from_json(kDsJson, &cam) == SPHTRI_OK);

    const double point[3] = {0.0, 0.0, 1.0};
    double pixel[2] = {0, 0};
    REQUIRE(sphtri_camera_project(cam, point, pixel) == SPHTRI_OK);
    CHECK(pixel[0] == doctest::Approx(638.66));
    CHECK(pixel[1] == doctest::Approx(514.39));

    double ray[3] = {0, 0, 0};
    REQUIRE(sphtri_camera_unproject(cam, pixel, ray) == SPHTRI_OK);
    CHECK(ray[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(ray[2] == doctest::Approx(1.0).epsilon(1e-12));

    const double behind[3] = {0.0, 0.0, -1.0};
    CHECK(sphtri_camera_project(cam, behind, pixel) == SPHTRI_OUT_OF_DOMAIN);
    const double corner[2] = {0.0, 0.0};
    CHECK(sphtri_camera_unproject(cam, corner, ray) == SPHTRI_OUT_OF_DOMAIN);

    sphtri_camera_destroy(cam);
}

TEST_CASE("camera json errors set last_error") {
    sphtri_camera* cam = nullptr;
    CHECK(sphtri_camera_create_from_json("{\"model\":\"nope\"}", &cam) ==
          SPHTRI_DATASET_ERROR);
    CHECK(std::strlen(sphtri_last_error()) > 0);
    CHECK(sphtri_camera_create_from_json(nullptr, &cam) == SPHTRI_INVALID_ARGUMENT);
}

TEST_CASE("frame creation and triangulation across all methods") {
    sphtri_frame* frame = nullptr;
    const double pos_a[3] = {0.0, 0.0, 0.0};
    const double pos_b[3] = {2.0, 0.0, 0.0};
    REQUIRE(sphtri_frame_create(kIdentity, pos_a, kIdentity, pos_b, &frame) == SPHTRI_OK);

    const double inv_s2 = 1.0 / std::sqrt(2.0);
    const double ray_a[3] = {inv_s2, 0.0, inv_s2};
    const double ray_b[3] = {-inv_s2, 0.0, inv_s2};

    for (int m = SPHTRI_METHOD_MIDPOINT; m <= SPHTRI_METHOD_PLN_POLY; ++m) {
        sphtri_result result;
        REQUIRE(sphtri_triangulate(frame, static_cast<sphtri_method>(m), ray_a, ray_b,
                                   &result) == SPHTRI_OK);
        CHECK(result.status == SPHTRI_RESULT_OK);
        CHECK(result.point[0] == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(result.point[1] == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(result.point[2] == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(result.converged == 1);
    }
    sphtri_frame_destroy(frame);
}

TEST_CASE("relative frame and degenerate statuses") {
    sphtri_frame* frame = nullptr;
    const double baseline[3] = {1.0, 0.0, 0.0};
    REQUIRE(sphtri_frame_create_relative(kIdentity, baseline, &frame) == SPHTRI_OK);

    const double parallel[3] = {0.0, 0.0, 1.0};
    sphtri_result result;
    REQUIRE(sphtri_triangulate(frame, SPHTRI_METHOD_MIDPOINT, parallel, parallel,
                               &result) == SPHTRI_OK);
    CHECK(result.status == SPHTRI_RESULT_DEGENERATE);

    const double backward[3] = {0.3, 0.1, -1.0};
    REQUIRE(sphtri_triangulate(frame, SPHTRI_METHOD_PLN_POLY, backward, parallel,
                               &result) == SPHTRI_OK);
    CHECK(result.status == SPHTRI_RESULT_NOT_REPRESENTABLE);

    sphtri_frame_destroy(frame);

    const double zero[3] = {0.0, 0.0, 0.0};
    CHECK(sphtri_frame_create(kIdentity, zero, kIdentity, zero, &frame) ==
          SPHTRI_INVALID_ARGUMENT);
}

TEST_CASE("method names round trip") {
    for (int m = SPHTRI_METHOD_MIDPOINT; m <= SPHTRI_METHOD_PLN_POLY; ++m) {
        sphtri_method out;
        REQUIRE(sphtri_method_from_name(sphtri_method_name(static_cast<sphtri_method>(m)),
                                        &out) == SPHTRI_OK);
        CHECK(out == m);
    }
    sphtri_method out;
    CHECK(sphtri_method_from_name("bogus", &out) == SPHTRI_CONFIG_ERROR);
}

TEST_CASE("synthetic runner returns the summary csv") {
    const char* desc = R"({"seed": 4, "trials": 1, "methods": ["sph-quad"],
        "noise": {"channel": "sphere", "distribution": "gaussian", "sigmas": [0.0]}})";
    char* csv = nullptr;
    REQUIRE(sphtri_run_synthetic(desc, &csv) == SPHTRI_OK);
    REQUIRE(csv != nullptr);
    const std::string text(csv);
    CHECK(text.rfind("method,channel,sigma,n,mean_s2,median_s2,mean_p2,median_p2,"
                     "mean_r3,median_r3,mean_d_ref,max_d_ref,runtime_us\n",
                     0) == 0);
    CHECK(text.find("sph-quad,sphere,0,231,") != std::string::npos);
    sphtri_free_string(csv);

    char* bad = nullptr;
    CHECK(sphtri_run_synthetic("{\"methods\": []}", &bad) == SPHTRI_CONFIG_ERROR);
    CHECK(sphtri_run_real(R"({"methods": ["sph-quad"], "dataset": {"calibration":
        "/nonexistent.json", "correspondences": "/nonexistent.csv"}})",
                          &bad) != SPHTRI_OK);
}
