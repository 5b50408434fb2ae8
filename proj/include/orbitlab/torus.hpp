#pragma once

#include <stdexcept>

#include "orbitlab/maps.hpp"

namespace orbitlab {

class NotInvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PrecisionExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Saturated integer sublattice, rows of `basis` generating it. Rows are the
/// parametrization exponents of the corresponding subtorus: the rank-r
/// lattice L describes {(prod_k z_k^{L_k1}, ..., prod_k z_k^{L_kn})}.
struct Sublattice {
    int ambient = 0;
    IntMat basis;  // rank x ambient

    static Sublattice make(IntMat basis_rows);  // throws on dependent or unsaturated rows
    int rank() const { return basis.rows(); }
    bool operator==(const Sublattice& o) const { return ambient == o.ambient && basis == o.basis; }
};

/// Splits the map into homomorphism part and torus translation.
std::pair<IntMat, std::vector<Rat>> translation_normalize(const MonomialMap& f);

struct FixReport {
    bool finite = true;
    Int count = 0;                       // |det(M - I)| when finite and solvable, 0 when unsolvable
    std::vector<Int> structure;          // Smith diagonal of M - I (zeros last)
    std::vector<AffinePoint> sample_points;  // the rational fixed points
};

/// Fixed points of c * x^M on the torus. det(M - I) != 0 gives exactly
/// |det(M - I)| fixed points regardless of the translation; the singular
/// case is decided by solvability of the twisted equation.
FixReport fixed_point_count(const MonomialMap& f);

struct InvariantMonomialWitness {
    int iterate = 0;                 // the l with (M^T)^l v = v
    std::vector<Int> exponent;       // primitive kernel vector v
    bool coefficient_condition = false;  // accumulated twist of x^v under f^l equals 1
};

struct InvariantFunctionReport {
    bool found = false;
    std::vector<InvariantMonomialWitness> witnesses;
    int ell_max = 0;
};

/// Searches l = 1..l_max for Laurent monomials fixed by the pullback of f^l.
/// l_max = 0 picks the root-of-unity order bound for the dimension
/// (lcm of {d : phi(d) <= n}); passing a smaller bound is rejected.
InvariantFunctionReport invariant_monomials(const MonomialMap& f, int ell_max = 0);

int invariant_monomial_ell_bound(int dim);

struct InvariantSubtori {
    bool infinitely_many = false;
    std::string note;  // "scalar matrix" or the eigenvalue with a fat eigenspace
    std::vector<Sublattice> lattices;
};

/// Proper nonzero invariant sublattices for n <= 3 via the rational
/// eigenspace structure of the matrix. Scalar matrices (and any rational
/// eigenvalue of geometric multiplicity >= 2) leave infinitely many
/// invariant sublattices; those cases are flagged with representatives.
InvariantSubtori invariant_subtori(const MonomialMap& f);

/// Induced map on the subtorus translate through `coset` parametrized by the
/// rows of L. Exact invariance of both the lattice and the coset is checked.
MonomialMap restrict_to_subtorus(const MonomialMap& f, const Sublattice& l, const AffinePoint& coset);

/// Fixed-precision p-adic integer: a residue mod p^k with explicit
/// precision accounting.
class PAdicInt {
public:
    PAdicInt(Int prime, int precision, const Int& value);

    const Int& prime() const { return p_; }
    int precision() const { return k_; }
    const Int& residue() const { return r_; }
    const Int& modulus() const { return pk_; }

    PAdicInt pow(const Int& e) const;
    PAdicInt operator*(const PAdicInt& o) const;
    PAdicInt operator-(const PAdicInt& o) const;

    /// Exact valuation of the residue; PrecisionExhausted when the residue is
    /// 0 mod p^k (valuation >= precision, not determinable).
    long valuation() const;
    bool is_zero_at_precision() const { return r_ == 0; }

private:
    Int p_;
    int k_;
    Int pk_;
    Int r_;
};

struct PadicProbe {
    std::vector<long> valuations;  // v_p(x^{p^j} - 1), j = 0..steps
    int precision = 0;
    bool exact_fixed_point = false;  // x == 1: valuations capped at the precision
};

/// Valuations v_p(x^{p^j} - 1) for j = 0..steps; p odd prime, x = 1 mod p.
/// The integer overload picks precision steps + v_p(x-1) + 1.
PadicProbe padic_attraction_probe(const Int& p, const Int& x, int steps);
PadicProbe padic_attraction_probe(const PAdicInt& x, int steps);

}  // namespace orbitlab
