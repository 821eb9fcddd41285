#pragma once

#include "dataset_io.hpp"
#include "synthetic.hpp"
#include "triangulate.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sphtri {

enum class Method { midpoint, sph_lin, sph_quad, sph_abs, fw, pln_poly };

Method method_from_name(const std::string& name);
const char* method_name(Method m);

TriangulationResult run_method(Method m, const Correspondence& c, const StereoFrame& f);

struct ExperimentDescriptor {
    std::uint64_t seed = 0;
    int trials = 1;
    std::vector<Method> methods;
    Method reference_method = Method::sph_quad;
    SceneConfig scene;
    NoiseChannel channel = NoiseChannel::sphere;
    NoiseDistribution distribution = NoiseDistribution::gaussian;
    std::vector<double> sigmas{0.0};
    std::string camera_json;  // required for image channels
    std::string calibration_path;
    std::string correspondences_path;
    int runtime_points = 10000;
};

/// Parses the experiment descriptor JSON; kind is one of "synthetic",
/// "real", "runtime", "fwcheck". Throws Error(config) on any problem.
ExperimentDescriptor parse_descriptor(const std::string& json_text, const std::string& kind);

struct SummaryRow {
    std::string method;
    std::string channel;
    double sigma = 0.0;
    long n = 0;
    double mean_s2 = 0.0, median_s2 = 0.0;
    double mean_p2 = 0.0, median_p2 = 0.0;
    double mean_r3 = 0.0, median_r3 = 0.0;
    double mean_d_ref = 0.0, max_d_ref = 0.0;
    double runtime_us = 0.0;
};

/// Fixed header:
/// method,channel,sigma,n,mean_s2,median_s2,mean_p2,median_p2,mean_r3,median_r3,mean_d_ref,max_d_ref,runtime_us
std::string summary_csv(const std::vector<SummaryRow>& rows);

/// Per sigma and method: generate, perturb, triangulate, aggregate.
/// S2 is the reprojection residual (both views), P2 the image-space
/// reprojection residual where the camera domain allows it, R3 the
/// distance to the true point.
std::vector<SummaryRow> run_synthetic_experiment(const ExperimentDescriptor& desc);

/// Reproduction of the iterative-vs-closed-form comparison: the s2 columns
/// carry the correction-based residual |u_hat - u| + |u_hat' - u'| and the
/// d columns the corrected-ray distances to the reference method.
std::vector<SummaryRow> run_fw_check(const ExperimentDescriptor& desc);

/// Median statistics per method over a loaded dataset.
std::vector<SummaryRow> run_real_experiment(const ExperimentDescriptor& desc);

/// Single-threaded per-point wall clock, warm-up pass excluded. Emits an
/// additional "<method>-opt" row (surface optimisation only) for the four
/// optimising methods.
std::vector<SummaryRow> run_runtime_benchmark(const ExperimentDescriptor& desc);

double mean_of(const std::vector<double>& v);
double median_of(std::vector<double> v);

}  // namespace sphtri
