#include "orbitlab/heights.hpp"

namespace orbitlab {

HeightValue height_projective(const ProjectivePoint& p) {
    Int m = 0;
    for (const Int& c : p.coords) {
        Int a = abs(c);
        if (a > m) m = a;
    }
    HeightValue h;
    h.exact_bitlen = bit_length(m);
    h.value = m == 1 ? 0.0 : log_abs(m);
    return h;
}

HeightValue height_affine(const AffinePoint& p) {
    return height_projective(ProjectivePoint::from_affine(p));
}

}  // namespace orbitlab
