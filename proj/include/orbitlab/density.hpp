#pragma once

#include <optional>

#include "orbitlab/degrees.hpp"
#include "orbitlab/torus.hpp"

namespace orbitlab {

struct AnalysisParams {
    int n_max = 12;
    long height_budget_bits = 1000000;
    int d_max = 3;
    int ell_max = 0;  // 0 = dimension-dependent default
    double tol = 1e-6;
    long p = 3;
    int padic_steps = 5;
};

/// Number of monomials of total degree <= d in `nvars` variables.
std::size_t monomial_space_dim(int nvars, int d);

/// Exact rational kernel of the degree-<=d evaluation matrix at the given
/// points, via fraction-free integer elimination. Kernel vectors are
/// returned as primitive integer polynomials (positive leading coefficient),
/// one per free column of the reduced system.
std::vector<MultiPoly> relation_kernel(const std::vector<AffinePoint>& points, int d);

/// Nonzero polynomial vanishing on every supplied orbit point.
struct RelationCertificate {
    int degree = 0;
    MultiPoly relation;
    int points_used = 0;
};

struct DensityReport {
    enum class Outcome { relation_found, no_relation_up_to, inconclusive };
    Outcome outcome = Outcome::inconclusive;
    std::optional<RelationCertificate> certificate;
    int d_max = 0;
    int points_used = 0;
    std::string reason;  // inconclusive only
};

/// Scans degrees 1..d_max for the minimal-degree exact relation on the orbit
/// points; the chosen certificate is deterministic (smallest leading
/// monomial, positive leading coefficient) and re-verified by evaluation.
DensityReport density_certificate(const OrbitRecord& orbit, int d_max);
DensityReport density_certificate(const std::vector<AffinePoint>& points, int d_max);

struct SddVerdict {
    int dim = 0;
    std::vector<double> degrees;
    enum class Clause { clause1, clause2, clause3, none } clause = Clause::none;
    std::string detail;
};

/// First satisfied sufficient condition for the small-dynamical-degree
/// property, in order: (1) dim 2, d1 > 1 and d1 >= d2; (2) dim 3,
/// d1 > d3 = 1 (d3 exactly 1); (3) smooth, d1 > max_{i>=2} d_i.
/// Strict inequalities require a 1e-9 margin.
SddVerdict sdd_hypothesis_check(const DynDegrees& dd, int dim, bool smooth);

struct KscReport {
    double alpha_hat = 1.0;   // stabilized ratio comparator
    double alpha_root = 1.0;  // raw n-th root estimate
    double d1 = 1.0;
    double gap = 0.0;
    bool violation = false;  // alpha_hat > d1 + 0.05
    DensityReport density;
};

KscReport ksc_report(const MapVariant& f, const AffinePoint& x, const AnalysisParams& params);

struct ZdoPointReport {
    AffinePoint start;
    OrbitStatus status;
    std::size_t orbit_length = 0;
    std::optional<double> alpha;  // absent when the orbit is too short
    DensityReport density;
};

struct ZdoReport {
    std::vector<ZdoPointReport> points;
    std::optional<InvariantFunctionReport> invariant_functions;  // monomial maps
    std::optional<DynDegrees> dyn_degrees;
    std::optional<SddVerdict> sdd;
    std::vector<std::string> flags;  // internal contradictions
    std::string note;
};

/// Per-start orbit/density/alpha summary plus the map-level invariant
/// structure; never aborts on a single bad start point.
ZdoReport zdo_experiment(const MapVariant& f, const std::vector<AffinePoint>& starts,
                         const AnalysisParams& params);

/// Degree of the polynomial relation induced by an invariant Laurent
/// monomial x^v (the level-set equation x^{v+} = const * x^{v-}).
std::int64_t invariant_monomial_relation_degree(const std::vector<Int>& v);

}  // namespace orbitlab
