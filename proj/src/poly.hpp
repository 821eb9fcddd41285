#pragma once

#include <vector>

namespace sphtri {

/// Real roots of c[0] + c[1] x + ... + c[n] x^n via the companion-matrix
/// eigenvalues, after trimming near-zero leading coefficients. Roots with
/// relative imaginary part above 1e-8 are discarded.
std::vector<double> real_roots(const std::vector<double>& coeffs);

/// Both real roots of a x^2 + b x + c computed with the cancellation-free
/// q-formula; handles the linear (a ~ 0) and constant cases by returning
/// fewer roots.
std::vector<double> quadratic_roots(double a, double b, double c);

}  // namespace sphtri
