#include "orbitlab/torus.hpp"

#include <algorithm>
#include <numeric>

#include "orbitlab/polyroots.hpp"

namespace orbitlab {

namespace {

long small_exponent(const Int& e) {
    if (!mpz_fits_slong_p(e.get_mpz_t())) throw std::overflow_error("exponent too large");
    return e.get_si();
}

// b^u for a rational vector b (all nonzero) and integer vector u.
Rat twisted_power(const std::vector<Rat>& b, const std::vector<Int>& u) {
    Rat r(1);
    for (std::size_t i = 0; i < b.size(); ++i)
        if (u[i] != 0) r *= pow_rat(b[i], small_exponent(u[i]));
    return r;
}

// Solutions over the torus of x^A = b. `solvable` refers to the algebraic
// closure; rational solutions are enumerated exactly in the nonsingular case.
struct MonomialSolve {
    bool solvable = false;
    bool finite = false;
    Int solution_count = 0;  // |det A| when finite
    std::vector<std::vector<Rat>> rational_solutions;
};

MonomialSolve solve_monomial_equation(const IntMat& a, const std::vector<Rat>& b) {
    int n = a.rows();
    MonomialSolve out;
    SmithForm f = smith_normal_form(a);
    // b' = b^U; the equation becomes z_i^{s_i} = b'_i with x = z^V.
    std::vector<Rat> bp(n);
    for (int i = 0; i < n; ++i) {
        std::vector<Int> row(n);
        for (int j = 0; j < n; ++j) row[j] = f.u(i, j);
        bp[i] = twisted_power(b, row);
    }
    Int detA = det(a);
    out.finite = detA != 0;
    for (int i = 0; i < n; ++i) {
        Int s = f.s(i, i);
        if (s == 0 && bp[i] != 1) return out;  // unsolvable
    }
    out.solvable = true;
    if (!out.finite) return out;
    out.solution_count = abs(detA);

    // Rational solutions: combine the rational s_i-th roots of b'_i.
    std::vector<std::vector<Rat>> root_choices(n);
    for (int i = 0; i < n; ++i) {
        root_choices[i] = rational_kth_roots(bp[i], static_cast<unsigned long>(small_exponent(f.s(i, i))));
        if (root_choices[i].empty()) return out;  // no rational solution at all
    }
    std::vector<std::vector<Rat>> zs{{}};
    for (int i = 0; i < n; ++i) {
        std::vector<std::vector<Rat>> next;
        for (const auto& partial : zs)
            for (const Rat& r : root_choices[i]) {
                auto copy = partial;
                copy.push_back(r);
                next.push_back(std::move(copy));
            }
        zs = std::move(next);
    }
    for (const auto& z : zs) {
        std::vector<Rat> x(n);
        for (int j = 0; j < n; ++j) {
            std::vector<Int> row(n);
            for (int k = 0; k < n; ++k) row[k] = f.v(j, k);
            x[j] = twisted_power(z, row);
        }
        out.rational_solutions.push_back(std::move(x));
    }
    std::sort(out.rational_solutions.begin(), out.rational_solutions.end(),
              [](const auto& l, const auto& r) {
                  for (std::size_t i = 0; i < l.size(); ++i) {
                      if (l[i] < r[i]) return true;
                      if (r[i] < l[i]) return false;
                  }
                  return false;
              });
    out.rational_solutions.erase(std::unique(out.rational_solutions.begin(), out.rational_solutions.end()),
                                 out.rational_solutions.end());
    return out;
}

}  // namespace

Sublattice Sublattice::make(IntMat basis_rows) {
    if (basis_rows.rows() < 1) throw std::invalid_argument("Sublattice: empty basis");
    if (!is_saturated(basis_rows))
        throw std::invalid_argument("Sublattice: basis must be independent and saturated");
    Sublattice l;
    l.ambient = basis_rows.cols();
    l.basis = std::move(basis_rows);
    return l;
}

std::pair<IntMat, std::vector<Rat>> translation_normalize(const MonomialMap& f) {
    return {f.matrix, f.coeff};
}

FixReport fixed_point_count(const MonomialMap& f) {
    int n = f.dim();
    IntMat a = f.matrix - IntMat::identity(n);
    std::vector<Rat> b(n);
    for (int i = 0; i < n; ++i) b[i] = 1 / f.coeff[i];

    FixReport rep;
    SmithForm snf = smith_normal_form(a);
    for (int i = 0; i < n; ++i) rep.structure.push_back(snf.s(i, i));
    std::sort(rep.structure.begin(), rep.structure.end(), [](const Int& x, const Int& y) {
        if (x == 0) return false;
        if (y == 0) return true;
        return x < y;
    });

    MonomialSolve sol = solve_monomial_equation(a, b);
    if (!sol.solvable) {
        rep.finite = true;
        rep.count = 0;
        return rep;
    }
    if (!sol.finite) {
        rep.finite = false;
        return rep;
    }
    rep.finite = true;
    rep.count = sol.solution_count;
    for (const auto& x : sol.rational_solutions) rep.sample_points.emplace_back(x);
    return rep;
}

int invariant_monomial_ell_bound(int dim) {
    auto phi = [](int d) {
        int result = d;
        for (int p = 2; p * p <= d; ++p)
            if (d % p == 0) {
                while (d % p == 0) d /= p;
                result -= result / p;
            }
        if (d > 1) result -= result / d;
        return result;
    };
    long l = 1;
    for (int d = 1; d <= 2 * dim * dim * dim * dim + 2; ++d)
        if (phi(d) <= dim) l = std::lcm(l, static_cast<long>(d));
    return static_cast<int>(l);
}

InvariantFunctionReport invariant_monomials(const MonomialMap& f, int ell_max) {
    int n = f.dim();
    int bound = invariant_monomial_ell_bound(n);
    if (ell_max == 0) ell_max = bound;
    if (ell_max < bound)
        throw std::invalid_argument("invariant_monomials: ell_max below the root-of-unity order bound " +
                                    std::to_string(bound));
    InvariantFunctionReport rep;
    rep.ell_max = ell_max;
    IntMat mt = f.matrix.transpose();
    IntMat mt_pow = IntMat::identity(n);
    MonomialMap iterate = MonomialMap::identity(n);
    for (int ell = 1; ell <= ell_max; ++ell) {
        mt_pow = mt_pow * mt;
        iterate = compose(f, iterate);
        IntMat k = kernel_lattice(mt_pow - IntMat::identity(n));
        for (int r = 0; r < k.rows(); ++r) {
            InvariantMonomialWitness w;
            w.iterate = ell;
            w.exponent.resize(n);
            for (int j = 0; j < n; ++j) w.exponent[j] = k(r, j);
            w.coefficient_condition = twisted_power(iterate.coeff, w.exponent) == 1;
            if (w.coefficient_condition) rep.found = true;
            rep.witnesses.push_back(std::move(w));
        }
    }
    return rep;
}

namespace {

Sublattice lattice_from_rows(IntMat rows) { return Sublattice::make(std::move(rows)); }

void push_unique(std::vector<Sublattice>& ls, Sublattice l) {
    for (const Sublattice& e : ls)
        if (e == l) return;
    ls.push_back(std::move(l));
}

}  // namespace

InvariantSubtori invariant_subtori(const MonomialMap& f) {
    int n = f.dim();
    if (n > 3) throw std::invalid_argument("invariant_subtori: supported only for dimension <= 3");
    InvariantSubtori out;
    const IntMat& m = f.matrix;

    bool scalar = true;
    for (int i = 0; i < n && scalar; ++i)
        for (int j = 0; j < n && scalar; ++j)
            if ((i == j && m(i, j) != m(0, 0)) || (i != j && m(i, j) != 0)) scalar = false;
    if (scalar) {
        out.infinitely_many = true;
        out.note = "scalar matrix: every sublattice is invariant";
        return out;
    }

    std::vector<Int> eigenvalues = integer_roots(char_poly(m));
    for (const Int& lam : eigenvalues) {
        IntMat shifted = m;
        for (int i = 0; i < n; ++i) shifted(i, i) -= lam;
        IntMat k = kernel_lattice(shifted);
        if (k.rows() >= 2) {
            out.infinitely_many = true;
            out.note = "eigenvalue " + lam.get_str() + " has a rational eigenspace of dimension " +
                       std::to_string(k.rows());
            push_unique(out.lattices, lattice_from_rows(k));  // representative
            continue;
        }
        if (k.rows() == 1) push_unique(out.lattices, lattice_from_rows(k));
    }

    if (n == 3) {
        // Rank-2 invariant lattices are annihilators of eigenvectors of M^T.
        IntMat mt = m.transpose();
        for (const Int& lam : eigenvalues) {
            IntMat shifted = mt;
            for (int i = 0; i < n; ++i) shifted(i, i) -= lam;
            IntMat k = kernel_lattice(shifted);
            for (int r = 0; r < k.rows(); ++r) {
                IntMat row(1, n);
                for (int j = 0; j < n; ++j) row(0, j) = k(r, j);
                IntMat plane = kernel_lattice(row);
                if (plane.rows() == 2) push_unique(out.lattices, lattice_from_rows(plane));
            }
        }
    }
    return out;
}

MonomialMap restrict_to_subtorus(const MonomialMap& f, const Sublattice& l, const AffinePoint& coset) {
    int n = f.dim();
    if (l.ambient != n) throw std::invalid_argument("restrict_to_subtorus: ambient dimension mismatch");
    if (coset.dim() != n) throw std::invalid_argument("restrict_to_subtorus: coset dimension mismatch");
    for (const Rat& c : coset.coords)
        if (c == 0) throw std::invalid_argument("restrict_to_subtorus: coset point off the torus");
    int r = l.rank();

    // Lattice invariance: each basis row, pushed through the map, must stay
    // in the row span. N with L M^T = N L collects the coefficients.
    IntMat lmt = l.basis * f.matrix.transpose();
    IntMat nmat(r, r);
    for (int i = 0; i < r; ++i) {
        std::vector<Int> w(n);
        for (int j = 0; j < n; ++j) w[j] = lmt(i, j);
        auto x = solve_in_row_span(l.basis, w);
        if (!x) {
            std::string v = "(";
            for (int j = 0; j < n; ++j) v += l.basis(i, j).get_str() + (j + 1 < n ? "," : ")");
            throw NotInvariantError("sublattice not invariant: basis vector " + v);
        }
        for (int j = 0; j < r; ++j) nmat(i, j) = (*x)[j];
    }

    // Coset invariance: b = c * a^{M-I} must lie on the subtorus; pull it
    // back through the parametrization via an integer left inverse of L^T.
    std::vector<Rat> b(n);
    for (int i = 0; i < n; ++i) {
        std::vector<Int> row(n);
        for (int j = 0; j < n; ++j) row[j] = f.matrix(i, j) - (i == j ? 1 : 0);
        b[i] = f.coeff[i] * twisted_power(coset.coords, row);
    }
    SmithForm snf = smith_normal_form(l.basis);
    IntMat e(n, r);
    for (int i = 0; i < r; ++i) e(i, i) = 1;
    IntMat w_t = snf.v * e * snf.u;  // n x r with L * W^T = I_r
    std::vector<Rat> gamma(r);
    for (int k = 0; k < r; ++k) {
        std::vector<Int> col(n);
        for (int j = 0; j < n; ++j) col[j] = w_t(j, k);
        gamma[k] = twisted_power(b, col);
    }
    // Exact check that the pullback reproduces b.
    for (int j = 0; j < n; ++j) {
        Rat prod(1);
        for (int k = 0; k < r; ++k)
            if (l.basis(k, j) != 0) prod *= pow_rat(gamma[k], small_exponent(l.basis(k, j)));
        if (prod != b[j])
            throw NotInvariantError("coset translate is not invariant under the map");
    }

    MonomialMap out;
    out.matrix = nmat.transpose();
    out.coeff = std::move(gamma);
    return out;
}

PAdicInt::PAdicInt(Int prime, int precision, const Int& value) : p_(std::move(prime)), k_(precision) {
    if (k_ < 1) throw std::invalid_argument("PAdicInt: precision must be >= 1");
    if (mpz_probab_prime_p(p_.get_mpz_t(), 40) == 0) throw std::invalid_argument("PAdicInt: p not prime");
    mpz_pow_ui(pk_.get_mpz_t(), p_.get_mpz_t(), static_cast<unsigned long>(k_));
    mpz_mod(r_.get_mpz_t(), value.get_mpz_t(), pk_.get_mpz_t());
}

PAdicInt PAdicInt::pow(const Int& e) const {
    if (e < 0) throw std::invalid_argument("PAdicInt::pow: negative exponent");
    PAdicInt out = *this;
    mpz_powm(out.r_.get_mpz_t(), r_.get_mpz_t(), e.get_mpz_t(), pk_.get_mpz_t());
    return out;
}

PAdicInt PAdicInt::operator*(const PAdicInt& o) const {
    if (p_ != o.p_ || k_ != o.k_) throw std::invalid_argument("PAdicInt: mixed precision arithmetic");
    PAdicInt out = *this;
    out.r_ = (r_ * o.r_) % pk_;
    return out;
}

PAdicInt PAdicInt::operator-(const PAdicInt& o) const {
    if (p_ != o.p_ || k_ != o.k_) throw std::invalid_argument("PAdicInt: mixed precision arithmetic");
    PAdicInt out = *this;
    out.r_ = r_ - o.r_;
    mpz_mod(out.r_.get_mpz_t(), out.r_.get_mpz_t(), pk_.get_mpz_t());
    return out;
}

long PAdicInt::valuation() const {
    if (r_ == 0) throw PrecisionExhausted("valuation indistinguishable from precision cap");
    return *padic_valuation(r_, p_);
}

PadicProbe padic_attraction_probe(const PAdicInt& x, int steps) {
    if (x.prime() == 2) throw std::invalid_argument("padic_attraction_probe: p must be odd");
    Int xm1 = x.residue() - 1;
    if (xm1 % x.prime() != 0) throw std::invalid_argument("padic_attraction_probe: x must be 1 mod p");
    PadicProbe probe;
    probe.precision = x.precision();
    PAdicInt one(x.prime(), x.precision(), Int(1));
    if (x.residue() == 1) {
        probe.exact_fixed_point = true;
        probe.valuations.assign(static_cast<std::size_t>(steps) + 1, x.precision());
        return probe;
    }
    PAdicInt y = x;
    for (int j = 0; j <= steps; ++j) {
        PAdicInt diff = y - one;
        probe.valuations.push_back(diff.valuation());  // throws PrecisionExhausted at the cap
        if (j < steps) y = y.pow(x.prime());
    }
    for (std::size_t i = 0; i + 1 < probe.valuations.size(); ++i)
        if (probe.valuations[i + 1] <= probe.valuations[i])
            throw std::logic_error("padic_attraction_probe: valuations failed to increase");
    return probe;
}

PadicProbe padic_attraction_probe(const Int& p, const Int& x, int steps) {
    Int xm1 = x - 1;
    long v0 = xm1 == 0 ? 0 : *padic_valuation(xm1, p);
    int precision = steps + static_cast<int>(v0) + 1;
    return padic_attraction_probe(PAdicInt(p, precision, x), steps);
}

}  // namespace orbitlab
