#include "poly.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace sphtri {

std::vector<double> real_roots(const std::vector<double>& coeffs) {
    double max_abs = 0.0;
    for (double c : coeffs) {
        max_abs = std::max(max_abs, std::abs(c));
    }
    if (max_abs == 0.0) {
        return {};
    }
    int degree = static_cast<int>(coeffs.size()) - 1;
    while (degree > 0 && std::abs(coeffs[degree]) < 1e-13 * max_abs) {
        --degree;
    }
    if (degree <= 0) {
        return {};
    }
    if (degree == 1) {
        return {-coeffs[0] / coeffs[1]};
    }
    if (degree == 2) {
        return quadratic_roots(coeffs[2], coeffs[1], coeffs[0]);
    }

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
    const double lead = coeffs[degree];
    for (int i = 0; i < degree; ++i) {
        companion(i, degree - 1) = -coeffs[i] / lead;
        if (i + 1 < degree) {
            companion(i + 1, i) = 1.0;
        }
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    std::vector<double> roots;
    for (int i = 0; i < degree; ++i) {
        const auto z = solver.eigenvalues()[i];
        if (std::abs(z.imag()) <= 1e-8 * (1.0 + std::abs(z.real()))) {
            roots.push_back(z.real());
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<double> quadratic_roots(double a, double b, double c) {
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
    if (scale == 0.0) {
        return {};
    }
    if (std::abs(a) < 1e-14 * scale) {
        if (std::abs(b) < 1e-14 * scale) {
            return {};
        }
        return {-c / b};
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) {
        return {};
    }
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    if (q == 0.0) {
        return {0.0, 0.0};
    }
    return {q / a, c / q};
}

}  // namespace sphtri
