#include "orbitlab/polyroots.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace orbitlab {

namespace {

using QPoly = std::vector<Rat>;  // coefficients, ascending

QPoly trim(QPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

int deg(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

Rat eval_q(const QPoly& p, const Rat& x) {
    Rat r(0);
    for (int i = deg(p); i >= 0; --i) r = r * x + p[i];
    return r;
}

QPoly derivative(const QPoly& p) {
    QPoly d;
    for (int i = 1; i <= deg(p); ++i) d.push_back(p[i] * i);
    return trim(d);
}

// Remainder of the euclidean division over Q.
QPoly poly_rem(QPoly a, const QPoly& b) {
    a = trim(a);
    while (deg(a) >= deg(b) && !a.empty()) {
        Rat f = a.back() / b.back();
        int shift = deg(a) - deg(b);
        for (int i = 0; i <= deg(b); ++i) a[i + shift] -= f * b[i];
        a = trim(a);
    }
    return a;
}

QPoly poly_gcd(QPoly a, QPoly b) {
    a = trim(a);
    b = trim(b);
    while (!b.empty()) {
        QPoly r = poly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rat lead = a.back();
        for (Rat& c : a) c /= lead;
    }
    return a;
}

QPoly poly_div_exact(const QPoly& a, const QPoly& b) {
    QPoly rem = a, q(std::max(0, deg(a) - deg(b) + 1));
    while (deg(rem) >= deg(b) && !rem.empty()) {
        Rat f = rem.back() / b.back();
        int shift = deg(rem) - deg(b);
        q[shift] = f;
        for (int i = 0; i <= deg(b); ++i) rem[i + shift] -= f * b[i];
        rem = trim(rem);
    }
    if (!rem.empty()) throw std::logic_error("poly_div_exact: nonzero remainder");
    return trim(q);
}

// Signs of the Sturm chain at x; returns the number of sign changes.
int sturm_changes(const std::vector<QPoly>& chain, const Rat& x) {
    int changes = 0, prev = 0;
    for (const QPoly& p : chain) {
        Rat v = eval_q(p, x);
        int s = v == 0 ? 0 : (v > 0 ? 1 : -1);
        if (s != 0) {
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
    }
    return changes;
}

std::vector<QPoly> sturm_chain(const QPoly& p) {
    std::vector<QPoly> chain;
    chain.push_back(p);
    chain.push_back(derivative(p));
    while (deg(chain.back()) > 0) {
        QPoly r = poly_rem(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (Rat& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    return chain;
}

// One Newton step cap at 256-bit precision; refines a double approximation.
double mpfr_newton_polish(const std::vector<Int>& c, double x0) {
    mpfr_t x, fx, dfx, t;
    mpfr_inits2(256, x, fx, dfx, t, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_d(x, x0, MPFR_RNDN);
    int n = static_cast<int>(c.size()) - 1;
    for (int iter = 0; iter < 60; ++iter) {
        mpfr_set_zero(fx, 1);
        mpfr_set_zero(dfx, 1);
        for (int i = n; i >= 0; --i) {
            mpfr_mul(dfx, dfx, x, MPFR_RNDN);
            mpfr_add(dfx, dfx, fx, MPFR_RNDN);
            mpfr_mul(fx, fx, x, MPFR_RNDN);
            mpfr_set_z(t, c[i].get_mpz_t(), MPFR_RNDN);
            mpfr_add(fx, fx, t, MPFR_RNDN);
        }
        if (mpfr_zero_p(dfx)) break;
        mpfr_div(t, fx, dfx, MPFR_RNDN);
        mpfr_sub(x, x, t, MPFR_RNDN);
        mpfr_abs(t, t, MPFR_RNDN);
        if (mpfr_cmp_d(t, 1e-50) < 0) break;
    }
    double out = mpfr_get_d(x, MPFR_RNDN);
    mpfr_clears(x, fx, dfx, t, static_cast<mpfr_ptr>(nullptr));
    return out;
}

struct CplxP {
    mpfr_t re, im;
};

// Horner evaluation of an integer polynomial at a complex point, 256 bits.
void horner_cplx(const std::vector<Int>& c, const CplxP& z, CplxP& out) {
    mpfr_t ar, ai, t1, t2;
    mpfr_inits2(256, ar, ai, t1, t2, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_zero(ar, 1);
    mpfr_set_zero(ai, 1);
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
        // (ar, ai) = (ar, ai) * z + c[i]
        mpfr_mul(t1, ar, z.re, MPFR_RNDN);
        mpfr_mul(t2, ai, z.im, MPFR_RNDN);
        mpfr_sub(t1, t1, t2, MPFR_RNDN);
        mpfr_mul(t2, ar, z.im, MPFR_RNDN);
        mpfr_mul(ai, ai, z.re, MPFR_RNDN);
        mpfr_add(ai, ai, t2, MPFR_RNDN);
        mpfr_set(ar, t1, MPFR_RNDN);
        mpfr_set_z(t1, c[i].get_mpz_t(), MPFR_RNDN);
        mpfr_add(ar, ar, t1, MPFR_RNDN);
    }
    mpfr_set(out.re, ar, MPFR_RNDN);
    mpfr_set(out.im, ai, MPFR_RNDN);
    mpfr_clears(ar, ai, t1, t2, static_cast<mpfr_ptr>(nullptr));
}

std::complex<double> mpfr_newton_polish_cplx(const std::vector<Int>& c, std::complex<double> z0) {
    std::vector<Int> d;
    for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<long>(i));
    CplxP z, f, df;
    mpfr_inits2(256, z.re, z.im, f.re, f.im, df.re, df.im, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_d(z.re, z0.real(), MPFR_RNDN);
    mpfr_set_d(z.im, z0.imag(), MPFR_RNDN);
    mpfr_t t1, t2, den;
    mpfr_inits2(256, t1, t2, den, static_cast<mpfr_ptr>(nullptr));
    for (int iter = 0; iter < 50; ++iter) {
        horner_cplx(c, z, f);
        horner_cplx(d, z, df);
        mpfr_mul(t1, df.re, df.re, MPFR_RNDN);
        mpfr_mul(t2, df.im, df.im, MPFR_RNDN);
        mpfr_add(den, t1, t2, MPFR_RNDN);
        if (mpfr_zero_p(den)) break;
        // z -= f / df = f * conj(df) / |df|^2
        mpfr_mul(t1, f.re, df.re, MPFR_RNDN);
        mpfr_mul(t2, f.im, df.im, MPFR_RNDN);
        mpfr_add(t1, t1, t2, MPFR_RNDN);
        mpfr_div(t1, t1, den, MPFR_RNDN);
        mpfr_sub(z.re, z.re, t1, MPFR_RNDN);
        mpfr_mul(t1, f.im, df.re, MPFR_RNDN);
        mpfr_mul(t2, f.re, df.im, MPFR_RNDN);
        mpfr_sub(t1, t1, t2, MPFR_RNDN);
        mpfr_div(t1, t1, den, MPFR_RNDN);
        mpfr_sub(z.im, z.im, t1, MPFR_RNDN);
    }
    std::complex<double> out(mpfr_get_d(z.re, MPFR_RNDN), mpfr_get_d(z.im, MPFR_RNDN));
    mpfr_clears(z.re, z.im, f.re, f.im, df.re, df.im, t1, t2, den, static_cast<mpfr_ptr>(nullptr));
    return out;
}

std::vector<std::complex<double>> aberth(const std::vector<Int>& c) {
    int n = static_cast<int>(c.size()) - 1;
    std::vector<std::complex<double>> p(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) p[i] = c[i].get_d();
    std::vector<std::complex<double>> d(n);
    for (int i = 1; i <= n; ++i) d[i - 1] = p[i] * static_cast<double>(i);

    double bound = 0;
    for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(p[i] / p[n]));
    bound = 1.0 + bound;

    std::vector<std::complex<double>> z(n);
    for (int i = 0; i < n; ++i) {
        double ang = 2.0 * M_PI * i / n + 0.437;
        z[i] = std::polar(bound * 0.7, ang);
    }
    auto horner = [](const std::vector<std::complex<double>>& q, std::complex<double> x) {
        std::complex<double> r = 0;
        for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) r = r * x + q[i];
        return r;
    };
    for (int iter = 0; iter < 400; ++iter) {
        double move = 0;
        for (int i = 0; i < n; ++i) {
            std::complex<double> f = horner(p, z[i]);
            std::complex<double> fp = horner(std::vector<std::complex<double>>(d.begin(), d.end()), z[i]);
            if (std::abs(f) == 0) continue;
            std::complex<double> ratio = fp == std::complex<double>(0) ? std::complex<double>(0) : f / fp;
            std::complex<double> sum = 0;
            for (int j = 0; j < n; ++j)
                if (j != i) sum += 1.0 / (z[i] - z[j]);
            std::complex<double> denum = 1.0 - ratio * sum;
            std::complex<double> step = denum == std::complex<double>(0) ? ratio : ratio / denum;
            z[i] -= step;
            move = std::max(move, std::abs(step));
        }
        if (move < 1e-14 * bound) break;
    }
    return z;
}

}  // namespace

std::vector<Int> integer_roots(const std::vector<Int>& coeffs) {
    std::vector<Int> out;
    if (coeffs.empty()) return out;
    QPoly q(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) q[i] = Rat(coeffs[i]);
    q = trim(q);
    if (q.empty()) return out;
    // Strip t^k factor.
    std::size_t shift = 0;
    while (shift < q.size() && q[shift] == 0) ++shift;
    if (shift > 0) out.push_back(0);
    Int c0 = q[shift].get_num();
    std::vector<Int> divisors;
    Int a = abs(c0);
    for (Int dvs = 1; dvs * dvs <= a; ++dvs)
        if (a % dvs == 0) {
            divisors.push_back(dvs);
            divisors.push_back(a / dvs);
        }
    for (const Int& dcand : divisors)
        for (int s : {1, -1}) {
            Rat x(s * dcand);
            if (eval_q(q, x) == 0) {
                Int r = x.get_num();
                if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

PolyRoots poly_roots(const std::vector<Int>& coeffs) {
    PolyRoots out;
    QPoly p(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) p[i] = Rat(coeffs[i]);
    p = trim(p);
    if (deg(p) <= 0) return out;

    // Squarefree part; multiplicities do not affect the root set.
    QPoly g = poly_gcd(p, derivative(p));
    QPoly sf = deg(g) >= 1 ? poly_div_exact(p, g) : p;
    std::vector<Int> sfz(sf.size());
    {
        Int den_lcm = 1;
        for (const Rat& c : sf) {
            Int d(c.get_den());
            den_lcm = den_lcm / gcd(den_lcm, d) * d;
        }
        for (std::size_t i = 0; i < sf.size(); ++i) {
            Rat exact = sf[i] * Rat(den_lcm);  // integral by construction
            sfz[i] = exact.get_num();
        }
    }

    int n = deg(sf);
    // Cauchy bound.
    Rat bound(1);
    for (int i = 0; i < n; ++i) {
        Rat m = abs(sf[i] / sf[n]);
        if (m > bound) bound = m;
    }
    bound += 1;

    // Sturm isolation of real roots.
    auto chain = sturm_chain(sf);
    struct Interval { Rat lo, hi; };
    std::vector<Interval> pending{{-bound, bound}}, isolated;
    while (!pending.empty()) {
        Interval iv = pending.back();
        pending.pop_back();
        int count = sturm_changes(chain, iv.lo) - sturm_changes(chain, iv.hi);
        if (count <= 0) continue;
        if (count == 1) { isolated.push_back(iv); continue; }
        Rat mid = (iv.lo + iv.hi) / 2;
        if (eval_q(sf, mid) == 0) {
            // Nudge the split point off the root.
            Rat eps = (iv.hi - iv.lo) / 1024;
            isolated.push_back({mid - eps, mid + eps});
            pending.push_back({iv.lo, mid - eps});
            pending.push_back({mid + eps, iv.hi});
        } else {
            pending.push_back({iv.lo, mid});
            pending.push_back({mid, iv.hi});
        }
    }
    for (Interval& iv : isolated) {
        for (int step = 0; step < 80 && (iv.hi - iv.lo) > Rat(1, 1000000000); ++step) {
            Rat mid = (iv.lo + iv.hi) / 2;
            Rat v = eval_q(sf, mid);
            if (v == 0) { iv.lo = iv.hi = mid; break; }
            if ((eval_q(sf, iv.lo) > 0) == (v > 0)) iv.lo = mid; else iv.hi = mid;
        }
        double approx = Rat((iv.lo + iv.hi) / 2).get_d();
        out.real_roots.push_back(mpfr_newton_polish(sfz, approx));
    }
    std::sort(out.real_roots.begin(), out.real_roots.end());

    int n_complex = n - static_cast<int>(out.real_roots.size());
    if (n_complex > 0) {
        auto z = aberth(sfz);
        for (auto& r : z) {
            if (r.imag() <= 0) continue;
            std::complex<double> pol = mpfr_newton_polish_cplx(sfz, r);
            if (std::abs(pol.imag()) < 1e-9 * std::max(1.0, std::abs(pol.real()))) continue;
            bool dup = false;
            for (auto& seen : out.complex_roots)
                if (std::abs(seen - pol) < 1e-7 * std::max(1.0, std::abs(pol))) dup = true;
            if (!dup) out.complex_roots.push_back(pol);
        }
    }

    for (double r : out.real_roots) out.max_modulus = std::max(out.max_modulus, std::abs(r));
    for (auto& r : out.complex_roots) out.max_modulus = std::max(out.max_modulus, std::abs(r));

    // Residual verification: reconstruct the squarefree polynomial from the
    // computed roots and compare coefficients.
    {
        std::vector<std::complex<double>> rec{1.0};
        auto mul_root = [&rec](std::complex<double> r) {
            std::vector<std::complex<double>> nxt(rec.size() + 1);
            for (std::size_t i = 0; i < rec.size(); ++i) {
                nxt[i + 1] += rec[i];
                nxt[i] -= rec[i] * r;
            }
            rec = std::move(nxt);
        };
        for (double r : out.real_roots) mul_root(r);
        for (auto& r : out.complex_roots) { mul_root(r); mul_root(std::conj(r)); }
        if (rec.size() == sfz.size()) {
            double lead = sfz.back().get_d();
            double scale = 0, err = 0;
            for (std::size_t i = 0; i < sfz.size(); ++i) {
                double want = sfz[i].get_d() / lead;
                scale = std::max(scale, std::abs(want));
                err = std::max(err, std::abs(rec[i].real() - want) + std::abs(rec[i].imag()));
            }
            if (err > 1e-7 * std::max(1.0, scale))
                throw std::runtime_error("poly_roots: residual verification failed");
        } else {
            throw std::runtime_error("poly_roots: root count mismatch");
        }
    }
    return out;
}

double max_root_modulus(const std::vector<Int>& coeffs) {
    return poly_roots(coeffs).max_modulus;
}

}  // namespace orbitlab
