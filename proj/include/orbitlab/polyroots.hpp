#pragma once

#include <complex>
#include <vector>

#include "orbitlab/rational.hpp"

namespace orbitlab {

/// Roots of a univariate integer polynomial p(t) = sum c[i] t^i, c.back() != 0.
/// Real roots come from Sturm isolation + bisection + Newton polishing;
/// non-real roots from Aberth iteration polished at high precision. Every
/// root is verified against a residual bound before being reported.
struct PolyRoots {
    std::vector<double> real_roots;                  // ascending
    std::vector<std::complex<double>> complex_roots; // conjugate pairs, Im > 0 once each
    double max_modulus = 0.0;
};

PolyRoots poly_roots(const std::vector<Int>& coeffs);

/// Largest root modulus (spectral radius when applied to a characteristic
/// polynomial); absolute error below 1e-12 for the sizes used here.
double max_root_modulus(const std::vector<Int>& coeffs);

/// Integer roots of a monic integer polynomial (exact).
std::vector<Int> integer_roots(const std::vector<Int>& coeffs);

}  // namespace orbitlab
