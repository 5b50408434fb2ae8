#pragma once

#include "orbitlab/maps.hpp"

namespace orbitlab {

/// Naive Weil height of a rational point: natural log of the largest
/// absolute value among the coprime integer projective coordinates. The
/// exact bit length of that coordinate is kept alongside the float.
struct HeightValue {
    double value = 0.0;
    long exact_bitlen = 0;
};

HeightValue height_projective(const ProjectivePoint& p);

/// Height after the embedding (a_1..a_m) -> [a_1 : ... : a_m : 1].
HeightValue height_affine(const AffinePoint& p);

/// max(h, 1), the truncation used by the degree-growth estimators.
inline double height_plus(double h) { return h < 1.0 ? 1.0 : h; }
inline double height_plus(const HeightValue& h) { return height_plus(h.value); }

}  // namespace orbitlab
