#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "camera.hpp"

#include <cmath>
#include <random>

using namespace sphtri;

namespace {

double angular_error(const Vec3& a, const Vec3& b) {
    const Vec3 an = a.normalized();
    const Vec3 bn = b.normalized();
    return std::atan2(an.cross(bn).norm(), an.dot(bn));
}

}  // namespace

TEST_CASE("double sphere principal point round trip") {
    const DoubleSphereCamera cam(bf2m2020s23_params());

    const auto pixel = cam.project(Vec3(0.0, 0.0, 1.0));
    REQUIRE(pixel.has_value());
    CHECK(pixel->u == doctest::Approx(638.66).epsilon(1e-12));
    CHECK(pixel->v == doctest::Approx(514.39).epsilon(1e-12));

    const auto ray = cam.unproject(PixelPoint{638.66, 514.39});
    REQUIRE(ray.has_value());
    CHECK((ray->vec() - Vec3(0.0, 0.0, 1.0)).norm() < 1e-12);
}

TEST_CASE("double sphere sign and symmetry") {
    const DoubleSphereCamera cam(bf2m2020s23_params());
    const auto pixel = cam.project(Vec3(1.0, 0.0, 1.0));
    REQUIRE(pixel.has_value());
    CHECK(pixel->u > cam.params().cx);
    CHECK(pixel->v == doctest::Approx(cam.params().cy).epsilon(1e-12));
}

TEST_CASE("double sphere y=0 points keep v at the principal row") {
    const DoubleSphereCamera cam(bf2m2020s23_params());
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        const Vec3 X(u(rng), 0.0, std::abs(u(rng)) + 0.2);
        const auto pixel = cam.project(X);
        if (pixel) {
            CHECK(pixel->v == doctest::Approx(cam.params().cy).epsilon(1e-11));
        }
    }
}

TEST_CASE("double sphere corner pixel is deterministically out of domain") {
    const DoubleSphereCamera cam(bf2m2020s23_params());
    const auto first = cam.unproject(PixelPoint{0.0, 0.0});
    const auto second = cam.unproject(PixelPoint{0.0, 0.0});
    CHECK(first.has_value() == second.has_value());
    CHECK_FALSE(first.has_value());  // corner lies outside the invertible disk
}

TEST_CASE("double sphere rejects points outside the view cone") {
    const DoubleSphereCamera cam(bf2m2020s23_params());
    CHECK_FALSE(cam.project(Vec3(0.0, 0.0, -1.0)).has_value());
    CHECK_FALSE(cam.project(Vec3::Zero()).has_value());
}

TEST_CASE("double sphere project/unproject round trip oracle") {
    const DoubleSphereCamera cam(bf2m2020s23_params());
    std::mt19937_64 rng(17);
    std::normal_distribution<double> g(0.0, 1.0);
    int tested = 0;
    while (tested < 1000) {
        Vec3 X(g(rng), g(rng), g(rng));
        if (X.norm() < 1e-3) {
            continue;
        }
        X *= 2.0 / X.norm();
        const auto pixel = cam.project(X);
        if (!pixel) {
            continue;
        }
        const auto ray = cam.unproject(*pixel);
        if (!ray) {
            continue;
        }
        ++tested;
        CHECK(angular_error(ray->vec(), X) < 1e-9);
        CHECK(std::abs(ray->vec().norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("pinhole basics") {
    const PinholeCamera cam(PinholeParams{100.0, 100.0, 0.0, 0.0, 1280, 1024});

    const auto centred = cam.project(Vec3(0.0, 0.0, 5.0));
    REQUIRE(centred.has_value());
    CHECK(centred->u == doctest::Approx(0.0));
    CHECK(centred->v == doctest::Approx(0.0));

    const auto off = cam.project(Vec3(1.0, 0.0, 1.0));
    REQUIRE(off.has_value());
    CHECK(off->u == doctest::Approx(100.0));
    CHECK(off->v == doctest::Approx(0.0));

    CHECK_FALSE(cam.project(Vec3(0.0, 0.0, -1.0)).has_value());
    CHECK_FALSE(cam.project(Vec3(1.0, 1.0, 0.0)).has_value());
}

TEST_CASE("pinhole round trip") {
    const PinholeCamera cam(PinholeParams{640.0, 610.0, 631.0, 508.0, 1280, 1024});
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const Vec3 X(u(rng), u(rng), 1.0 + std::abs(u(rng)));
        const auto pixel = cam.project(X);
        REQUIRE(pixel.has_value());
        const auto ray = cam.unproject(*pixel);
        REQUIRE(ray.has_value());
        CHECK(angular_error(ray->vec(), X) < 1e-12);
    }
}

TEST_CASE("camera json parsing") {
    const std::string ds_json =
        R"({"model":"double_sphere","fx":313.21,"fy":313.21,"cx":638.66,"cy":514.39,)"
        R"("xi":-0.18,"alpha":0.59,"width":1280,"height":1040})";
    const auto ds = camera_from_json(ds_json);
    CHECK(ds->name() == "double_sphere");
    CHECK(ds->width() == 1280);

    const auto pixel = ds->project(Vec3(0.0, 0.0, 1.0));
    REQUIRE(pixel.has_value());
    CHECK(pixel->u == doctest::Approx(638.66));

    const std::string ph_json =
        R"({"model":"pinhole","fx":600,"fy":600,"cx":640,"cy":512,"width":1280,"height":1024})";
    CHECK(camera_from_json(ph_json)->name() == "pinhole");

    // Round trip through the serialiser.
    const auto again = camera_from_json(camera_to_json(*ds));
    CHECK(again->name() == "double_sphere");
}

TEST_CASE("camera json rejects unknown keys and bad models") {
    CHECK_THROWS_AS(camera_from_json(R"({"model":"pinhole","fx":600,"fy":600,"cx":640,)"
                                     R"("cy":512,"width":1280,"height":1024,"xi":0.1})"),
                    Error);
    CHECK_THROWS_AS(camera_from_json(R"({"model":"equidistant","fx":1,"fy":1,"cx":0,)"
                                     R"("cy":0,"width":10,"height":10})"),
                    Error);
    CHECK_THROWS_AS(camera_from_json("not json"), Error);
    CHECK_THROWS_AS(camera_from_json(R"({"model":"pinhole","fx":600})"), Error);
}
