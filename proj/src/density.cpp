#include "orbitlab/density.hpp"

#include <algorithm>

namespace orbitlab {

std::size_t monomial_space_dim(int nvars, int d) {
    // C(d + nvars, nvars)
    std::size_t r = 1;
    for (int i = 1; i <= nvars; ++i) r = r * (d + i) / i;
    return r;
}

namespace {

void enumerate_monomials(int nvars, int d, int pos, Expo& cur, std::int64_t used, std::vector<Expo>& out) {
    if (pos == nvars) {
        out.push_back(cur);
        return;
    }
    for (std::int64_t e = 0; e <= d - used; ++e) {
        cur[pos] = e;
        enumerate_monomials(nvars, d, pos + 1, cur, used + e, out);
    }
    cur[pos] = 0;
}

std::vector<Expo> monomials_up_to(int nvars, int d) {
    std::vector<Expo> out;
    Expo cur(nvars, 0);
    enumerate_monomials(nvars, d, 0, cur, 0, out);
    std::sort(out.begin(), out.end(), GradedLexGreater{});  // largest monomial first
    return out;
}

// Fraction-free forward elimination; kernel by back substitution. Rows span
// is preserved by the Bareiss update, so the kernel is unchanged.
std::vector<std::vector<Rat>> integer_kernel(std::vector<std::vector<Int>> a, int cols) {
    int rows = static_cast<int>(a.size());
    std::vector<int> pivot_col;
    Int prev = 1;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int sel = -1;
        for (int i = r; i < rows; ++i)
            if (a[i][c] != 0) { sel = i; break; }
        if (sel < 0) continue;
        std::swap(a[r], a[sel]);
        for (int i = r + 1; i < rows; ++i) {
            for (int j = c + 1; j < cols; ++j) {
                Int t = a[i][j] * a[r][c] - a[i][c] * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        pivot_col.push_back(c);
        ++r;
    }
    int rank = r;
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;

    std::vector<std::vector<Rat>> kernel;
    for (int fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<Rat> v(cols, Rat(0));
        v[fc] = 1;
        for (int rr = rank - 1; rr >= 0; --rr) {
            int pc = pivot_col[rr];
            Rat s(0);
            for (int j = pc + 1; j < cols; ++j)
                if (v[j] != 0 && a[rr][j] != 0) s += Rat(a[rr][j]) * v[j];
            v[pc] = -s / Rat(a[rr][pc]);
        }
        kernel.push_back(std::move(v));
    }
    return kernel;
}

MultiPoly kernel_vector_to_poly(const std::vector<Rat>& v, const std::vector<Expo>& cols, int nvars) {
    MultiPoly p(nvars);
    for (std::size_t j = 0; j < v.size(); ++j)
        if (v[j] != 0) p.add_term(cols[j], v[j]);
    return p.primitive_part();
}

// Deterministic choice among kernel polynomials: smallest leading monomial,
// then fewer terms, then term-by-term comparison.
bool poly_less(const MultiPoly& a, const MultiPoly& b) {
    GradedLexGreater gt;
    if (a.leading_exponent() != b.leading_exponent())
        return gt(b.leading_exponent(), a.leading_exponent());
    if (a.terms().size() != b.terms().size()) return a.terms().size() < b.terms().size();
    auto ia = a.terms().begin(), ib = b.terms().begin();
    for (; ia != a.terms().end(); ++ia, ++ib) {
        if (ia->first != ib->first) return gt(ib->first, ia->first);
        if (ia->second != ib->second) return ia->second < ib->second;
    }
    return false;
}

}  // namespace

std::vector<MultiPoly> relation_kernel(const std::vector<AffinePoint>& points, int d) {
    if (points.empty()) throw std::invalid_argument("relation_kernel: no points");
    if (d < 1) throw std::invalid_argument("relation_kernel: degree must be >= 1");
    int m = points.front().dim();
    for (const AffinePoint& p : points)
        if (p.dim() != m) throw std::invalid_argument("relation_kernel: inconsistent dimensions");
    std::vector<Expo> cols = monomials_up_to(m, d);
    std::vector<std::vector<Int>> rows;
    rows.reserve(points.size());
    for (const AffinePoint& p : points) {
        std::vector<Rat> vals;
        vals.reserve(cols.size());
        Int den_lcm = 1;
        for (const Expo& e : cols) {
            Rat v(1);
            for (int i = 0; i < m; ++i)
                if (e[i] != 0) v *= pow_rat(p.coords[i], static_cast<long>(e[i]));
            Int dd(v.get_den());
            den_lcm = den_lcm / gcd(den_lcm, dd) * dd;
            vals.push_back(std::move(v));
        }
        std::vector<Int> row;
        row.reserve(cols.size());
        for (const Rat& v : vals) row.push_back(Int(v.get_num()) * (den_lcm / Int(v.get_den())));
        rows.push_back(std::move(row));
    }
    auto kernel = integer_kernel(std::move(rows), static_cast<int>(cols.size()));
    std::vector<MultiPoly> out;
    out.reserve(kernel.size());
    for (const auto& v : kernel) out.push_back(kernel_vector_to_poly(v, cols, m));
    std::sort(out.begin(), out.end(), poly_less);
    return out;
}

DensityReport density_certificate(const std::vector<AffinePoint>& points, int d_max) {
    DensityReport rep;
    rep.d_max = d_max;
    rep.points_used = static_cast<int>(points.size());
    if (points.empty()) {
        rep.outcome = DensityReport::Outcome::inconclusive;
        rep.reason = "no usable points";
        return rep;
    }
    int m = points.front().dim();
    std::size_t needed = monomial_space_dim(m, d_max) + 3;
    if (points.size() < needed) {
        rep.outcome = DensityReport::Outcome::inconclusive;
        rep.reason = "insufficient points: have " + std::to_string(points.size()) + ", need " +
                     std::to_string(needed);
        return rep;
    }
    for (int d = 1; d <= d_max; ++d) {
        auto kernel = relation_kernel(points, d);
        if (kernel.empty()) continue;
        const MultiPoly& rel = kernel.front();
        for (const AffinePoint& p : points)
            if (rel.evaluate(p.coords) != 0)
                throw std::logic_error("density_certificate: relation failed exact re-verification");
        rep.outcome = DensityReport::Outcome::relation_found;
        rep.certificate = RelationCertificate{d, rel, rep.points_used};
        return rep;
    }
    rep.outcome = DensityReport::Outcome::no_relation_up_to;
    return rep;
}

DensityReport density_certificate(const OrbitRecord& orbit, int d_max) {
    std::vector<AffinePoint> pts;
    if (orbit.projective) {
        for (const ProjectivePoint& p : orbit.projective_points)
            if (auto a = p.to_affine()) pts.push_back(*a);
    } else {
        pts = orbit.affine_points;
    }
    return density_certificate(pts, d_max);
}

SddVerdict sdd_hypothesis_check(const DynDegrees& dd, int dim, bool smooth) {
    if (dd.n != dim) throw std::invalid_argument("sdd_hypothesis_check: dimension mismatch");
    SddVerdict v;
    v.dim = dim;
    v.degrees = dd.values;
    constexpr double margin = 1e-9;
    const auto& d = dd.values;
    double d1 = d.empty() ? 1.0 : d[0];
    if (dim == 2 && d.size() >= 2) {
        if (d1 - 1.0 > margin && d1 - d[1] >= -margin) {
            v.clause = SddVerdict::Clause::clause1;
            v.detail = "d1 > 1 and d1 >= d2";
            return v;
        }
    }
    if (dim == 3 && d.size() >= 3) {
        if (d[2] == 1.0 && d1 - 1.0 > margin) {
            v.clause = SddVerdict::Clause::clause2;
            v.detail = "d1 > d3 = 1";
            return v;
        }
    }
    if (smooth && dim >= 2 && d.size() >= 2) {
        double rest = *std::max_element(d.begin() + 1, d.end());
        if (d1 - rest > margin) {
            v.clause = SddVerdict::Clause::clause3;
            v.detail = "smooth and d1 > max(d2..dn)";
            return v;
        }
    }
    v.clause = SddVerdict::Clause::none;
    v.detail = "no clause satisfied";
    return v;
}

namespace {

std::optional<DynDegrees> dyn_degrees_for(const MapVariant& f) {
    if (std::holds_alternative<MonomialMap>(f)) return monomial_dyn_degrees(std::get<MonomialMap>(f));
    if (std::holds_alternative<ProjectiveEndo>(f)) return projective_dyn_degrees(std::get<ProjectiveEndo>(f));
    return std::nullopt;
}

}  // namespace

KscReport ksc_report(const MapVariant& f, const AffinePoint& x, const AnalysisParams& params) {
    KscReport rep;
    OrbitRecord orbit = iterate_orbit(f, x, params.n_max, params.height_budget_bits);
    ArithDegreeEstimate est = estimate_arith_degree(orbit);  // propagates OrbitTooShort
    rep.alpha_hat = est.alpha_ratio;
    rep.alpha_root = est.alpha_hat;
    rep.d1 = first_dynamical_degree(f, std::max(params.n_max, 8), params.tol);
    rep.gap = rep.d1 - rep.alpha_hat;
    rep.violation = rep.alpha_hat > rep.d1 + 0.05;
    rep.density = density_certificate(orbit, params.d_max);
    return rep;
}

std::int64_t invariant_monomial_relation_degree(const std::vector<Int>& v) {
    Int pos = 0, neg = 0;
    for (const Int& e : v) {
        if (e > 0) pos += e;
        if (e < 0) neg -= e;
    }
    Int d = std::max(pos, neg);
    if (!mpz_fits_slong_p(d.get_mpz_t())) throw std::overflow_error("relation degree too large");
    return d.get_si();
}

ZdoReport zdo_experiment(const MapVariant& f, const std::vector<AffinePoint>& starts,
                         const AnalysisParams& params) {
    ZdoReport rep;
    rep.dyn_degrees = dyn_degrees_for(f);
    double d1 = rep.dyn_degrees ? rep.dyn_degrees->values.front()
                                : first_dynamical_degree(f, std::max(params.n_max, 8), params.tol);
    if (std::holds_alternative<MonomialMap>(f))
        rep.invariant_functions = invariant_monomials(std::get<MonomialMap>(f), params.ell_max);
    else if (std::holds_alternative<TriangularMap>(f))
        rep.note = "invariant-function decision not attempted for triangular maps";
    if (rep.dyn_degrees) rep.sdd = sdd_hypothesis_check(*rep.dyn_degrees, rep.dyn_degrees->n, true);

    bool any_no_relation = false;
    for (const AffinePoint& start : starts) {
        ZdoPointReport pr;
        pr.start = start;
        OrbitRecord orbit = iterate_orbit(f, start, params.n_max, params.height_budget_bits);
        pr.status = orbit.status;
        pr.orbit_length = orbit.size();
        pr.density = density_certificate(orbit, params.d_max);
        if (pr.density.outcome == DensityReport::Outcome::no_relation_up_to) any_no_relation = true;
        try {
            ArithDegreeEstimate est = estimate_arith_degree(orbit);
            pr.alpha = est.alpha_ratio;
            if (*pr.alpha > d1 + 0.05)
                rep.flags.push_back("alpha-exceeds-d1: start " + std::to_string(&start - starts.data()));
        } catch (const OrbitTooShort&) {
            pr.alpha = std::nullopt;
        }
        rep.points.push_back(std::move(pr));
    }

    if (rep.invariant_functions && rep.invariant_functions->found && any_no_relation) {
        // An invariant monomial pins every orbit to a level set; a dense probe
        // at or above that degree cannot legitimately come back empty.
        for (const auto& w : rep.invariant_functions->witnesses) {
            if (!w.coefficient_condition) continue;
            if (invariant_monomial_relation_degree(w.exponent) <= params.d_max) {
                rep.flags.push_back("invariant-function-found-but-no-relation-detected");
                break;
            }
        }
    }
    return rep;
}

}  // namespace orbitlab
