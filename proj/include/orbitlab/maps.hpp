#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "orbitlab/intmat.hpp"
#include "orbitlab/multipoly.hpp"

namespace orbitlab {

struct AffinePoint {
    std::vector<Rat> coords;

    AffinePoint() = default;
    explicit AffinePoint(std::vector<Rat> c) : coords(std::move(c)) {}
    int dim() const { return static_cast<int>(coords.size()); }
    bool operator==(const AffinePoint& o) const { return coords == o.coords; }
    long max_bit_length() const;
};

/// Integer coordinates, not all zero, gcd 1, first nonzero entry positive.
struct ProjectivePoint {
    std::vector<Int> coords;

    static ProjectivePoint canonical(std::vector<Int> raw);
    static ProjectivePoint from_affine(const AffinePoint& p);
    std::optional<AffinePoint> to_affine() const;  // nullopt on the hyperplane at infinity
    int dim() const { return static_cast<int>(coords.size()) - 1; }
    bool operator==(const ProjectivePoint& o) const { return coords == o.coords; }
    long max_bit_length() const;
};

/// Torus self-map x -> (c_i * prod_j x_j^{M_ij})_i. The matrix is the
/// homomorphism part, the coefficient vector the translation in the group law.
struct MonomialMap {
    IntMat matrix;
    std::vector<Rat> coeff;

    int dim() const { return matrix.rows(); }
    static MonomialMap identity(int n);
};

/// Affine self-map whose i-th component is a polynomial in x_i with
/// coefficients in the rational functions of x_1..x_{i-1}. Components are
/// stored over the full variable set.
struct TriangularMap {
    std::vector<RationalFunction> components;

    int dim() const { return static_cast<int>(components.size()); }
    static TriangularMap identity(int m);
};

/// m+1 homogeneous coordinates of common degree on P^m with no common
/// polynomial factor.
struct ProjectiveEndo {
    int dim = 0;  // P^dim
    std::vector<MultiPoly> coords;
    std::int64_t degree = 0;

    /// Cancels the polynomial gcd of the tuple, computes the common degree.
    /// Throws std::invalid_argument on inhomogeneous or empty input.
    static ProjectiveEndo make(std::vector<MultiPoly> coords);
    static ProjectiveEndo identity(int m);
    int nvars() const { return dim + 1; }
};

using MapVariant = std::variant<MonomialMap, TriangularMap, ProjectiveEndo>;

int map_dim(const MapVariant& f);
std::string family_name(const MapVariant& f);

/// Pointwise evaluation. nullopt encodes the one failure mode of each
/// family: a zero coordinate (torus boundary) for monomial maps, a vanishing
/// denominator (pole) for triangular maps, an all-zero coordinate tuple
/// (indeterminacy) for projective ones.
std::optional<AffinePoint> evaluate(const MonomialMap& f, const AffinePoint& p);
std::optional<AffinePoint> evaluate(const TriangularMap& f, const AffinePoint& p);
std::optional<ProjectivePoint> evaluate(const ProjectiveEndo& f, const ProjectivePoint& p);

MonomialMap compose(const MonomialMap& f, const MonomialMap& g);
TriangularMap compose(const TriangularMap& f, const TriangularMap& g);
ProjectiveEndo compose(const ProjectiveEndo& f, const ProjectiveEndo& g);
MapVariant compose(const MapVariant& f, const MapVariant& g);

/// Representative of the map on P^m agreeing with the affine map on the
/// standard chart; gcd removed. Used for degree computations, so common
/// zeros (indeterminacy) are fine.
ProjectiveEndo homogenize(const std::vector<RationalFunction>& affine_map);
ProjectiveEndo homogenize(const TriangularMap& f);
ProjectiveEndo homogenize(const MonomialMap& f);
std::vector<RationalFunction> affine_components(const MonomialMap& f);

/// Empty list iff the map satisfies its family invariants; otherwise named
/// violations ("singular matrix", "zero coefficient", "not dominant", ...).
std::vector<std::string> validate_map(const MapVariant& f);

struct OrbitStatus {
    enum class Kind { completed, pole_hit, torus_boundary_hit, height_budget_exceeded };
    Kind kind = Kind::completed;
    int step = -1;  // failing index; -1 when completed
    bool operator==(const OrbitStatus&) const = default;
};
std::string to_string(OrbitStatus::Kind k);

struct HeightValue;

/// Exact orbit prefix with heights. For an evaluation failure at points[s]
/// the status step is s; a point exceeding the bit budget is not stored and
/// the status step is the index it would have had.
struct OrbitRecord {
    bool projective = false;
    std::vector<AffinePoint> affine_points;
    std::vector<ProjectivePoint> projective_points;
    std::vector<double> heights;
    std::vector<long> height_bitlens;
    OrbitStatus status;

    std::size_t size() const { return projective ? projective_points.size() : affine_points.size(); }
};

OrbitRecord iterate_orbit(const MapVariant& map, const AffinePoint& start, int n_max, long height_budget_bits);
OrbitRecord iterate_orbit(const ProjectiveEndo& map, const ProjectivePoint& start, int n_max, long height_budget_bits);

}  // namespace orbitlab
