#include "orbitlab/degrees.hpp"

#include <algorithm>
#include <cmath>

#include "orbitlab/polyroots.hpp"

namespace orbitlab {

namespace {

std::size_t term_count(const ProjectiveEndo& f) {
    std::size_t t = 0;
    for (const MultiPoly& c : f.coords) t += c.terms().size();
    return t;
}

void check_limits(const ProjectiveEndo& f, const GrowthLimits& lim) {
    if (f.degree > lim.max_degree) throw ResourceCapError("degree cap exceeded");
    if (term_count(f) > lim.max_terms) throw ResourceCapError("term cap exceeded");
}

}  // namespace

std::int64_t degree_of_iterate(const ProjectiveEndo& f, int n, const GrowthLimits& lim) {
    if (n < 1) throw std::invalid_argument("degree_of_iterate: n must be >= 1");
    ProjectiveEndo g = f;
    check_limits(g, lim);
    for (int k = 1; k < n; ++k) {
        g = compose(f, g);
        check_limits(g, lim);
    }
    return g.degree;
}

DegreeGrowth estimate_d1_growth(const ProjectiveEndo& f, int n_iterates, double tol, const GrowthLimits& lim) {
    if (n_iterates < 3) throw std::invalid_argument("estimate_d1_growth: need at least 3 iterates");
    DegreeGrowth out;
    try {
        ProjectiveEndo g = f;
        check_limits(g, lim);
        out.degs.push_back(g.degree);
        for (int n = 2; n <= n_iterates; ++n) {
            g = compose(f, g);
            check_limits(g, lim);
            out.degs.push_back(g.degree);
        }
    } catch (const ResourceCapError&) {
        out.capped = true;
    }
    for (std::size_t i = 0; i < out.degs.size(); ++i)
        out.root_estimates.push_back(
            std::pow(static_cast<double>(out.degs[i]), 1.0 / static_cast<double>(i + 1)));
    for (std::size_t i = 0; i + 1 < out.degs.size(); ++i)
        out.ratio_estimates.push_back(static_cast<double>(out.degs[i + 1]) / static_cast<double>(out.degs[i]));
    if (!out.ratio_estimates.empty()) out.d1_estimate = out.ratio_estimates.back();
    else if (!out.degs.empty()) out.d1_estimate = static_cast<double>(out.degs[0]);
    if (out.d1_estimate < 1.0) out.d1_estimate = 1.0;
    std::size_t r = out.ratio_estimates.size();
    if (!out.capped && r >= 2)
        out.converged =
            std::abs(out.ratio_estimates[r - 1] - out.ratio_estimates[r - 2]) <= tol * out.ratio_estimates[r - 1];
    return out;
}

Int monomial_iterate_degree(const IntMat& a) {
    int n = a.rows();
    // Common denominator exponents per variable, then the max coordinate
    // degree of the cleared tuple; the result is already gcd-free.
    std::vector<Int> q(n, Int(0));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            Int neg = a(i, j) < 0 ? Int(-a(i, j)) : Int(0);
            if (neg > q[j]) q[j] = neg;
        }
    Int deg_q = 0;
    for (int j = 0; j < n; ++j) deg_q += q[j];
    Int d = deg_q;
    for (int i = 0; i < n; ++i) {
        Int row = 0;
        for (int j = 0; j < n; ++j) row += a(i, j) + q[j];
        if (row > d) d = row;
    }
    return d;
}

std::vector<Int> monomial_degree_sequence(const MonomialMap& f, int n_iterates) {
    std::vector<Int> out;
    out.reserve(n_iterates);
    IntMat p = f.matrix;
    for (int n = 1; n <= n_iterates; ++n) {
        out.push_back(monomial_iterate_degree(p));
        if (n < n_iterates) p = p * f.matrix;
    }
    return out;
}

DynDegrees monomial_dyn_degrees(const MonomialMap& f) {
    int n = f.dim();
    Int d = det(f.matrix);
    if (d == 0) throw std::invalid_argument("monomial_dyn_degrees: singular matrix");
    DynDegrees out;
    out.n = n;
    out.method = DynDegrees::Method::exact_spectral;
    for (int k = 1; k < n; ++k)
        out.values.push_back(max_root_modulus(char_poly(compound_matrix(f.matrix, k))));
    out.values.push_back(std::abs(Rat(d).get_d()));  // topological degree, exact
    for (double& v : out.values)
        if (v < 1.0) v = 1.0;
    return out;
}

DynDegrees projective_dyn_degrees(const ProjectiveEndo& f) {
    DynDegrees out;
    out.n = f.dim;
    out.method = DynDegrees::Method::exact_spectral;
    double d = static_cast<double>(f.degree);
    double acc = 1.0;
    for (int i = 1; i <= f.dim; ++i) {
        acc *= d;
        out.values.push_back(acc);
    }
    return out;
}

double first_dynamical_degree(const MapVariant& f, int n_iterates, double tol) {
    if (std::holds_alternative<MonomialMap>(f))
        return monomial_dyn_degrees(std::get<MonomialMap>(f)).values.front();
    if (std::holds_alternative<ProjectiveEndo>(f))
        return static_cast<double>(std::get<ProjectiveEndo>(f).degree);
    return estimate_d1_growth(homogenize(std::get<TriangularMap>(f)), n_iterates, tol).d1_estimate;
}

double stabilized_alpha(const std::vector<double>& ratio_seq) {
    if (ratio_seq.empty()) return 1.0;
    std::size_t k = ratio_seq.size();
    std::vector<double> cands;
    if (k >= 3) {
        double r0 = ratio_seq[k - 3], r1 = ratio_seq[k - 2], r2 = ratio_seq[k - 1];
        double d1 = r1 - r0, d2 = r2 - r1, dd = d2 - d1;
        double scale = std::max({1.0, std::abs(r0), std::abs(r2)});
        if (std::abs(dd) > 1e-12 * scale) {
            double a = r2 - d2 * d2 / dd;
            double lo = std::min({r0, r1, r2}), hi = std::max({r0, r1, r2});
            double span = hi - lo;
            if (std::isfinite(a) && a >= lo - span && a <= hi + span) cands.push_back(a);
        } else {
            cands.push_back(r2);
        }
    }
    auto geomean_tail = [&](std::size_t m) {
        m = std::min(m, k);
        double s = 0;
        for (std::size_t i = k - m; i < k; ++i) s += std::log(std::max(ratio_seq[i], 1e-300));
        return std::exp(s / static_cast<double>(m));
    };
    cands.push_back(geomean_tail(4));
    cands.push_back(geomean_tail(k));
    if (cands.empty()) cands.push_back(ratio_seq.back());
    double a = *std::min_element(cands.begin(), cands.end());
    return std::max(a, 1.0);
}

ArithDegreeEstimate estimate_arith_degree(const OrbitRecord& orbit) {
    std::size_t npts = orbit.size();
    if (npts < 4) throw OrbitTooShort("estimate_arith_degree: fewer than 3 orbit steps");
    ArithDegreeEstimate out;
    out.n_used = static_cast<int>(npts) - 1;
    std::vector<double> hplus(npts);
    for (std::size_t i = 0; i < npts; ++i) hplus[i] = std::max(orbit.heights[i], 1.0);
    for (std::size_t n = 1; n < npts; ++n)
        out.root_seq.push_back(std::pow(hplus[n], 1.0 / static_cast<double>(n)));
    for (std::size_t n = 0; n + 1 < npts; ++n) out.ratio_seq.push_back(hplus[n + 1] / hplus[n]);
    std::size_t w = std::min<std::size_t>(5, out.root_seq.size());
    out.window_lo = *std::min_element(out.root_seq.end() - w, out.root_seq.end());
    out.window_hi = *std::max_element(out.root_seq.end() - w, out.root_seq.end());
    out.alpha_hat = std::max(out.root_seq.back(), 1.0);
    out.alpha_ratio = stabilized_alpha(out.ratio_seq);
    return out;
}

ArithDegreeEstimate estimate_arith_degree(const MapVariant& f, const AffinePoint& x, int n_max,
                                          long height_budget_bits) {
    return estimate_arith_degree(iterate_orbit(f, x, n_max, height_budget_bits));
}

}  // namespace orbitlab
