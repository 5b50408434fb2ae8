#pragma once

#include <stdexcept>

#include "orbitlab/maps.hpp"

namespace orbitlab {

class ResourceCapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OrbitTooShort : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GrowthLimits {
    std::int64_t max_degree = 1 << 20;
    std::size_t max_terms = 200000;
};

/// Degree sequence of the iterates with the two standard estimators. The
/// degrees can drop (cancellation), so no monotonicity is assumed.
struct DegreeGrowth {
    std::vector<std::int64_t> degs;       // deg(f^n), n = 1..N
    std::vector<double> root_estimates;   // deg(f^n)^{1/n}
    std::vector<double> ratio_estimates;  // deg(f^{n+1}) / deg(f^n)
    double d1_estimate = 1.0;             // final ratio estimate
    bool converged = false;
    bool capped = false;
};

/// Common degree of the gcd-cancelled coordinate tuple of f^n.
/// Throws ResourceCapError when the symbolic composition outgrows `lim`.
std::int64_t degree_of_iterate(const ProjectiveEndo& f, int n, const GrowthLimits& lim = {});

DegreeGrowth estimate_d1_growth(const ProjectiveEndo& f, int n_iterates, double tol,
                                const GrowthLimits& lim = {});

/// Exact degree of the homogenized gcd-free representative of x -> x^A on
/// P^n, straight from the exponent matrix. Agrees with degree_of_iterate on
/// homogenized monomial maps and has no symbolic blowup.
Int monomial_iterate_degree(const IntMat& exponent_matrix);
std::vector<Int> monomial_degree_sequence(const MonomialMap& f, int n_iterates);

struct DynDegrees {
    int n = 0;
    std::vector<double> values;  // d_1 .. d_n
    enum class Method { exact_spectral, growth_estimate } method = Method::exact_spectral;
};

/// d_k as the spectral radius of the k-th compound matrix of M; d_n is
/// |det M| exactly.
DynDegrees monomial_dyn_degrees(const MonomialMap& f);

/// For an endomorphism of P^m given by degree-d coordinates, d_i = d^i.
DynDegrees projective_dyn_degrees(const ProjectiveEndo& f);

/// First dynamical degree of any supported family: exact for monomial maps
/// and P^m endomorphisms, a degree-growth estimate for triangular maps.
double first_dynamical_degree(const MapVariant& f, int n_iterates = 10, double tol = 1e-6);

/// Height-growth estimators along an orbit. alpha_hat follows the n-th root
/// sequence; alpha_ratio is the stabilized tail-ratio comparator used in
/// inequality checks (the root estimate carries an O(h(x0)^(1/n)) bias at
/// small n that the ratio tail does not).
struct ArithDegreeEstimate {
    int n_used = 0;
    std::vector<double> root_seq;   // (h+(f^n x))^{1/n}, n >= 1
    std::vector<double> ratio_seq;  // h+(f^{n+1} x) / h+(f^n x), n >= 0
    double window_lo = 1.0, window_hi = 1.0;  // min/max of last 5 root entries
    double alpha_hat = 1.0;                    // last root estimate, clamped >= 1
    double alpha_ratio = 1.0;                  // stabilized ratio estimate, clamped >= 1
};

/// Throws OrbitTooShort when fewer than 3 steps are available.
ArithDegreeEstimate estimate_arith_degree(const OrbitRecord& orbit);
ArithDegreeEstimate estimate_arith_degree(const MapVariant& f, const AffinePoint& x, int n_max,
                                          long height_budget_bits);

/// Aitken-accelerated ratio tail with geometric-mean fallbacks; clamped to
/// [1, inf). Deterministic.
double stabilized_alpha(const std::vector<double>& ratio_seq);

}  // namespace orbitlab
