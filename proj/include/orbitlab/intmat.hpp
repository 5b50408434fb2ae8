#pragma once

#include <vector>

#include "orbitlab/rational.hpp"

namespace orbitlab {

/// Dense integer matrix with exact entries. Small sizes only; all
/// operations are exact.
class IntMat {
public:
    IntMat() : rows_(0), cols_(0) {}
    IntMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}
    IntMat(int rows, int cols, std::vector<Int> entries);

    static IntMat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Int& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    bool operator==(const IntMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    IntMat transpose() const;

private:
    int rows_, cols_;
    std::vector<Int> a_;
};

IntMat operator*(const IntMat& a, const IntMat& b);
IntMat operator+(const IntMat& a, const IntMat& b);
IntMat operator-(const IntMat& a, const IntMat& b);
IntMat mat_pow(const IntMat& m, unsigned long e);

std::vector<Int> mat_apply(const IntMat& m, const std::vector<Int>& v);

/// Fraction-free determinant (Bareiss).
Int det(const IntMat& m);

/// Smith normal form. S = U * A * V with U, V unimodular and S diagonal,
/// diag entries non-negative with s1 | s2 | ... .
struct SmithForm {
    IntMat s, u, v;
    std::vector<Int> invariant_factors() const;
};
SmithForm smith_normal_form(const IntMat& a);

/// Basis (rows) of the right kernel lattice {v : A v = 0}; always saturated.
IntMat kernel_lattice(const IntMat& a);
/// Basis (rows) of the left kernel lattice {u : u A = 0}.
IntMat left_kernel_lattice(const IntMat& a);

/// Inverse of a unimodular matrix (|det| = 1). Throws otherwise.
IntMat unimodular_inverse(const IntMat& u);

/// All invariant factors equal 1, i.e. Z^n / rowspan is torsion-free.
bool is_saturated(const IntMat& basis_rows);

/// Solves x * B = w over the integers (B given by rows). Empty iff no solution.
std::optional<std::vector<Int>> solve_in_row_span(const IntMat& basis_rows, const std::vector<Int>& w);

/// k-th compound matrix: entries are the k x k minors, row/column index
/// sets ordered lexicographically.
IntMat compound_matrix(const IntMat& m, int k);

/// Characteristic polynomial coefficients c[0..n], monic (c[n] = 1), of an
/// n x n matrix: p(t) = sum c[i] t^i. Faddeev-LeVerrier.
std::vector<Int> char_poly(const IntMat& m);

}  // namespace orbitlab
