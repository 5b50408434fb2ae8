#include "orbitlab/intmat.hpp"

#include <algorithm>
#include <stdexcept>

namespace orbitlab {

IntMat::IntMat(int rows, int cols, std::vector<Int> entries) : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != static_cast<std::size_t>(rows) * cols)
        throw std::invalid_argument("IntMat: entry count mismatch");
}

IntMat IntMat::identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMat IntMat::transpose() const {
    IntMat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMat operator*(const IntMat& a, const IntMat& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("IntMat mul: shape mismatch");
    IntMat c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

IntMat operator+(const IntMat& a, const IntMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("IntMat add: shape mismatch");
    IntMat c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

IntMat operator-(const IntMat& a, const IntMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("IntMat sub: shape mismatch");
    IntMat c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

IntMat mat_pow(const IntMat& m, unsigned long e) {
    if (m.rows() != m.cols()) throw std::invalid_argument("mat_pow: square matrix required");
    IntMat r = IntMat::identity(m.rows());
    IntMat base = m;
    while (e > 0) {
        if (e & 1UL) r = r * base;
        e >>= 1UL;
        if (e > 0) base = base * base;
    }
    return r;
}

std::vector<Int> mat_apply(const IntMat& m, const std::vector<Int>& v) {
    if (static_cast<std::size_t>(m.cols()) != v.size()) throw std::invalid_argument("mat_apply: shape mismatch");
    std::vector<Int> r(m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
    return r;
}

Int det(const IntMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: square matrix required");
    int n = m.rows();
    if (n == 0) return 1;
    IntMat a = m;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (a(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a(k, k);
    }
    return sign > 0 ? a(n - 1, n - 1) : Int(-a(n - 1, n - 1));
}

namespace {

// Row/column elementary operations tracked in u (rows) and v (cols).
struct SnfWork {
    IntMat a, u, v;

    void swap_rows(int i, int j) {
        for (int c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
        for (int c = 0; c < u.cols(); ++c) std::swap(u(i, c), u(j, c));
    }
    void swap_cols(int i, int j) {
        for (int r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
        for (int r = 0; r < v.rows(); ++r) std::swap(v(r, i), v(r, j));
    }
    void add_row(int dst, int src, const Int& f) {
        for (int c = 0; c < a.cols(); ++c) a(dst, c) += f * a(src, c);
        for (int c = 0; c < u.cols(); ++c) u(dst, c) += f * u(src, c);
    }
    void add_col(int dst, int src, const Int& f) {
        for (int r = 0; r < a.rows(); ++r) a(r, dst) += f * a(r, src);
        for (int r = 0; r < v.rows(); ++r) v(r, dst) += f * v(r, src);
    }
    void negate_row(int i) {
        for (int c = 0; c < a.cols(); ++c) a(i, c) = -a(i, c);
        for (int c = 0; c < u.cols(); ++c) u(i, c) = -u(i, c);
    }
};

}  // namespace

SmithForm smith_normal_form(const IntMat& m) {
    SnfWork w{m, IntMat::identity(m.rows()), IntMat::identity(m.cols())};
    int n = m.rows(), q = m.cols();
    int t = 0;
    while (t < std::min(n, q)) {
        // Find a nonzero pivot of minimal magnitude in the trailing block.
        int pi = -1, pj = -1;
        Int best;
        for (int i = t; i < n; ++i)
            for (int j = t; j < q; ++j)
                if (w.a(i, j) != 0) {
                    Int mag = abs(w.a(i, j));
                    if (pi < 0 || mag < best) { best = mag; pi = i; pj = j; }
                }
        if (pi < 0) break;
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        bool clean = true;
        for (int i = t + 1; i < n; ++i)
            if (w.a(i, t) != 0) {
                Int f;
                mpz_fdiv_q(f.get_mpz_t(), w.a(i, t).get_mpz_t(), w.a(t, t).get_mpz_t());
                w.add_row(i, t, -f);
                if (w.a(i, t) != 0) clean = false;
            }
        for (int j = t + 1; j < q; ++j)
            if (w.a(t, j) != 0) {
                Int f;
                mpz_fdiv_q(f.get_mpz_t(), w.a(t, j).get_mpz_t(), w.a(t, t).get_mpz_t());
                w.add_col(j, t, -f);
                if (w.a(t, j) != 0) clean = false;
            }
        if (!clean) continue;
        // Enforce divisibility of the remaining block by the pivot.
        bool divides_all = true;
        for (int i = t + 1; i < n && divides_all; ++i)
            for (int j = t + 1; j < q && divides_all; ++j)
                if (w.a(i, j) % w.a(t, t) != 0) {
                    w.add_row(t, i, Int(1));
                    divides_all = false;
                }
        if (!divides_all) continue;
        if (w.a(t, t) < 0) w.negate_row(t);
        ++t;
    }
    return SmithForm{std::move(w.a), std::move(w.u), std::move(w.v)};
}

std::vector<Int> SmithForm::invariant_factors() const {
    std::vector<Int> r;
    for (int i = 0; i < std::min(s.rows(), s.cols()); ++i)
        if (s(i, i) != 0) r.push_back(s(i, i));
    return r;
}

IntMat kernel_lattice(const IntMat& a) {
    SmithForm f = smith_normal_form(a);
    int rank = static_cast<int>(f.invariant_factors().size());
    int n = a.cols();
    IntMat basis(n - rank, n);
    for (int k = rank; k < n; ++k)
        for (int i = 0; i < n; ++i) basis(k - rank, i) = f.v(i, k);
    return basis;
}

IntMat left_kernel_lattice(const IntMat& a) {
    SmithForm f = smith_normal_form(a);
    int rank = static_cast<int>(f.invariant_factors().size());
    int n = a.rows();
    IntMat basis(n - rank, n);
    for (int k = rank; k < n; ++k)
        for (int j = 0; j < n; ++j) basis(k - rank, j) = f.u(k, j);
    return basis;
}

IntMat unimodular_inverse(const IntMat& u) {
    if (u.rows() != u.cols()) throw std::invalid_argument("unimodular_inverse: square required");
    Int d = det(u);
    if (d != 1 && d != -1) throw std::invalid_argument("unimodular_inverse: |det| != 1");
    int n = u.rows();
    if (n == 0) return u;
    // Adjugate from cofactors; fine at these sizes.
    IntMat inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            IntMat sub(n - 1, n - 1);
            for (int r = 0, rr = 0; r < n; ++r) {
                if (r == i) continue;
                for (int c = 0, cc = 0; c < n; ++c) {
                    if (c == j) continue;
                    sub(rr, cc) = u(r, c);
                    ++cc;
                }
                ++rr;
            }
            Int cof = det(sub);
            if ((i + j) % 2 != 0) cof = -cof;
            inv(j, i) = d == 1 ? cof : Int(-cof);
        }
    return inv;
}

bool is_saturated(const IntMat& basis_rows) {
    SmithForm f = smith_normal_form(basis_rows);
    auto inv = f.invariant_factors();
    if (static_cast<int>(inv.size()) != basis_rows.rows()) return false;  // dependent rows
    for (const Int& d : inv)
        if (d != 1) return false;
    return true;
}

std::optional<std::vector<Int>> solve_in_row_span(const IntMat& basis_rows, const std::vector<Int>& w) {
    // x B = w  <=>  y S = w V with y = x U^{-1}, S = U B V.
    SmithForm f = smith_normal_form(basis_rows);
    int r = basis_rows.rows(), n = basis_rows.cols();
    if (static_cast<int>(w.size()) != n) throw std::invalid_argument("solve_in_row_span: shape mismatch");
    std::vector<Int> wv(n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) wv[j] += w[i] * f.v(i, j);
    std::vector<Int> y(r);
    for (int j = 0; j < n; ++j) {
        Int s = j < std::min(r, n) ? f.s(j, j) : Int(0);
        if (s == 0) {
            if (wv[j] != 0) return std::nullopt;
        } else {
            if (wv[j] % s != 0) return std::nullopt;
            y[j] = wv[j] / s;
        }
    }
    std::vector<Int> x(r);
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < r; ++i) x[j] += y[i] * f.u(i, j);
    return x;
}

namespace {

void subsets_of_size(int n, int k, std::vector<std::vector<int>>& out) {
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i;
    for (;;) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
}

}  // namespace

IntMat compound_matrix(const IntMat& m, int k) {
    if (m.rows() != m.cols()) throw std::invalid_argument("compound_matrix: square required");
    int n = m.rows();
    if (k < 1 || k > n) throw std::invalid_argument("compound_matrix: k out of range");
    std::vector<std::vector<int>> idx;
    subsets_of_size(n, k, idx);
    int sz = static_cast<int>(idx.size());
    IntMat c(sz, sz);
    for (int i = 0; i < sz; ++i)
        for (int j = 0; j < sz; ++j) {
            IntMat sub(k, k);
            for (int r = 0; r < k; ++r)
                for (int s = 0; s < k; ++s) sub(r, s) = m(idx[i][r], idx[j][s]);
            c(i, j) = det(sub);
        }
    return c;
}

std::vector<Int> char_poly(const IntMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("char_poly: square required");
    int n = m.rows();
    std::vector<Rat> c(n + 1);
    c[n] = 1;
    // Faddeev-LeVerrier over exact rationals; coefficients land in Z.
    std::vector<std::vector<Rat>> b(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i) b[i][i] = 1;
    for (int k = 1; k <= n; ++k) {
        std::vector<std::vector<Rat>> mb(n, std::vector<Rat>(n));
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l) {
                if (m(i, l) == 0) continue;
                Rat f(m(i, l));
                for (int j = 0; j < n; ++j) mb[i][j] += f * b[l][j];
            }
        Rat tr(0);
        for (int i = 0; i < n; ++i) tr += mb[i][i];
        c[n - k] = -tr / k;
        b = mb;
        for (int i = 0; i < n; ++i) b[i][i] += c[n - k];
    }
    std::vector<Int> out(n + 1);
    for (int i = 0; i <= n; ++i) {
        if (c[i].get_den() != 1) throw std::logic_error("char_poly: non-integer coefficient");
        out[i] = c[i].get_num();
    }
    return out;
}

}  // namespace orbitlab
