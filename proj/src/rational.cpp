#include "orbitlab/rational.hpp"

#include <mpfr.h>

#include <cctype>

namespace orbitlab {

double log_abs(const Int& z) {
    if (z == 0) throw std::domain_error("log_abs: zero argument");
    Int a = abs(z);
    if (a == 1) return 0.0;
    mpfr_t t;
    mpfr_init2(t, 128);
    mpfr_set_z(t, a.get_mpz_t(), MPFR_RNDN);
    mpfr_log(t, t, MPFR_RNDN);
    double r = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    return r;
}

Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Rat pow_rat(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (base == 0 && e < 0) throw std::domain_error("pow_rat: 0 to negative power");
    unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    Rat r;
    mpz_pow_ui(r.get_num().get_mpz_t(), base.get_num().get_mpz_t(), a);
    mpz_pow_ui(r.get_den().get_mpz_t(), base.get_den().get_mpz_t(), a);
    r.canonicalize();
    if (e < 0) r = 1 / r;
    return r;
}

std::vector<Rat> rational_kth_roots(const Rat& q, unsigned long k) {
    if (k == 0) throw std::invalid_argument("rational_kth_roots: k must be >= 1");
    if (k == 1) return {q};
    if (q == 0) return {Rat(0)};
    bool even = (k % 2 == 0);
    if (even && q < 0) return {};
    Int num = abs(Int(q.get_num()));
    Int den(q.get_den());
    Int rn, rd;
    if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), k)) return {};
    if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), k)) return {};
    Rat root(rn, rd);
    root.canonicalize();
    if (q < 0) root = -root;  // odd k
    if (even) return {root, -root};
    return {root};
}

Rat parse_rational(const std::string& text) {
    std::size_t slash = text.find('/');
    auto check_int = [](const std::string& s, bool allow_sign) {
        if (s.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    if (slash == std::string::npos) {
        if (!check_int(text, true)) throw std::invalid_argument("not an integer: " + text);
        return Rat(Int(text));
    }
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    if (!check_int(num, true) || !check_int(den, false))
        throw std::invalid_argument("not a rational: " + text);
    Int d(den);
    if (d == 0) throw std::invalid_argument("zero denominator: " + text);
    Rat r(Int(num), d);
    r.canonicalize();
    return r;
}

std::string rational_to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::optional<long> padic_valuation(const Int& n, const Int& p) {
    if (n == 0) return std::nullopt;
    long v = 0;
    Int m = n, r, qout;
    for (;;) {
        mpz_fdiv_qr(qout.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        if (r != 0) break;
        m = qout;
        ++v;
    }
    return v;
}

}  // namespace orbitlab
