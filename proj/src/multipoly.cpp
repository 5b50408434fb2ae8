#include "orbitlab/multipoly.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace orbitlab {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("exponent overflow");
    return r;
}

std::int64_t expo_degree(const Expo& e) {
    std::int64_t d = 0;
    for (std::int64_t x : e) d = checked_add(d, x);
    return d;
}

}  // namespace

bool GradedLexGreater::operator()(const Expo& a, const Expo& b) const {
    std::int64_t da = expo_degree(a), db = expo_degree(b);
    if (da != db) return da > db;
    return a > b;
}

MultiPoly MultiPoly::constant(int nvars, const Rat& c) {
    MultiPoly p(nvars);
    p.add_term(Expo(nvars, 0), c);
    return p;
}

MultiPoly MultiPoly::variable(int nvars, int index, std::int64_t power) {
    if (index < 0 || index >= nvars) throw std::invalid_argument("MultiPoly::variable: bad index");
    Expo e(nvars, 0);
    e[index] = power;
    return monomial(nvars, e, Rat(1));
}

MultiPoly MultiPoly::monomial(int nvars, const Expo& e, const Rat& c) {
    if (static_cast<int>(e.size()) != nvars) throw std::invalid_argument("MultiPoly::monomial: bad exponent");
    MultiPoly p(nvars);
    p.add_term(e, c);
    return p;
}

bool MultiPoly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && expo_degree(terms_.begin()->first) == 0;
}

Rat MultiPoly::constant_value() const {
    if (terms_.empty()) return Rat(0);
    if (!is_constant()) throw std::logic_error("constant_value of non-constant polynomial");
    return terms_.begin()->second;
}

std::int64_t MultiPoly::total_degree() const {
    if (terms_.empty()) return -1;
    return expo_degree(terms_.begin()->first);
}

std::int64_t MultiPoly::degree_in(int var) const {
    if (terms_.empty()) return -1;
    std::int64_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
}

const Expo& MultiPoly::leading_exponent() const {
    if (terms_.empty()) throw std::logic_error("leading_exponent of zero polynomial");
    return terms_.begin()->first;
}

const Rat& MultiPoly::leading_coefficient() const {
    if (terms_.empty()) throw std::logic_error("leading_coefficient of zero polynomial");
    return terms_.begin()->second;
}

void MultiPoly::add_term(const Expo& e, const Rat& c) {
    if (static_cast<int>(e.size()) != nvars_) throw std::invalid_argument("add_term: bad exponent length");
    for (std::int64_t x : e)
        if (x < 0) throw std::invalid_argument("add_term: negative exponent");
    Rat cc = c;
    cc.canonicalize();
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (cc != 0) terms_.emplace(e, cc);
    } else {
        it->second += cc;
        if (it->second == 0) terms_.erase(it);
    }
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    if (nvars_ != o.nvars_) throw std::invalid_argument("MultiPoly +=: variable count mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    if (nvars_ != o.nvars_) throw std::invalid_argument("MultiPoly -=: variable count mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("MultiPoly *: variable count mismatch");
    MultiPoly r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            Expo e(a.nvars_);
            for (int i = 0; i < a.nvars_; ++i) e[i] = checked_add(ea[i], eb[i]);
            r.add_term(e, ca * cb);
        }
    return r;
}

MultiPoly MultiPoly::pow(std::int64_t e) const {
    if (e < 0) throw std::invalid_argument("MultiPoly::pow: negative exponent");
    MultiPoly r = constant(nvars_, Rat(1));
    MultiPoly base = *this;
    while (e > 0) {
        if (e & 1) r *= base;
        e >>= 1;
        if (e > 0) base *= base;
    }
    return r;
}

Rat MultiPoly::content() const {
    if (terms_.empty()) return Rat(0);
    Int num_gcd = 0, den_lcm = 1;
    for (const auto& [e, c] : terms_) {
        Int n = abs(Int(c.get_num()));
        Int d(c.get_den());
        num_gcd = gcd(num_gcd, n);
        den_lcm = den_lcm / gcd(den_lcm, d) * d;
    }
    Rat r(num_gcd, den_lcm);
    r.canonicalize();
    return r;
}

MultiPoly MultiPoly::primitive_part() const {
    if (terms_.empty()) return *this;
    Rat c = content();
    if (leading_coefficient() < 0) c = -c;
    MultiPoly r(nvars_);
    for (const auto& [e, coef] : terms_) r.terms_.emplace(e, coef / c);
    return r;
}

bool MultiPoly::is_homogeneous() const {
    if (terms_.empty()) return true;
    std::int64_t d = expo_degree(terms_.begin()->first);
    for (const auto& [e, c] : terms_)
        if (expo_degree(e) != d) return false;
    return true;
}

Rat MultiPoly::evaluate(const std::vector<Rat>& point) const {
    if (static_cast<int>(point.size()) != nvars_) throw std::invalid_argument("evaluate: wrong point dimension");
    // Power cache per variable.
    std::vector<std::map<std::int64_t, Rat>> cache(nvars_);
    Rat total(0);
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (int i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            auto it = cache[i].find(e[i]);
            if (it == cache[i].end())
                it = cache[i].emplace(e[i], pow_rat(point[i], e[i])).first;
            t *= it->second;
        }
        total += t;
    }
    return total;
}

std::optional<MultiPoly> try_divide(const MultiPoly& dividend, const MultiPoly& divisor) {
    if (divisor.is_zero()) throw std::invalid_argument("try_divide: division by zero polynomial");
    int n = dividend.nvars();
    MultiPoly q(n), r = dividend;
    const Expo& dle = divisor.leading_exponent();
    const Rat& dlc = divisor.leading_coefficient();
    while (!r.is_zero()) {
        const Expo& rle = r.leading_exponent();
        Expo t(n);
        for (int i = 0; i < n; ++i) {
            t[i] = rle[i] - dle[i];
            if (t[i] < 0) return std::nullopt;
        }
        MultiPoly term = MultiPoly::monomial(n, t, r.leading_coefficient() / dlc);
        q += term;
        r -= term * divisor;
    }
    return q;
}

MultiPoly divide_exact(const MultiPoly& dividend, const MultiPoly& divisor) {
    auto q = try_divide(dividend, divisor);
    if (!q) throw std::logic_error("divide_exact: not divisible");
    return *q;
}

namespace {

// Coefficients of p viewed as a univariate polynomial in `var`, indexed by
// the var-exponent; each coefficient has var-exponent zero.
std::vector<MultiPoly> coeffs_in_var(const MultiPoly& p, int var) {
    std::int64_t d = p.degree_in(var);
    std::vector<MultiPoly> out(static_cast<std::size_t>(d + 1), MultiPoly(p.nvars()));
    for (const auto& [e, c] : p.terms()) {
        Expo rest = e;
        std::int64_t k = rest[var];
        rest[var] = 0;
        out[static_cast<std::size_t>(k)].add_term(rest, c);
    }
    return out;
}

MultiPoly from_coeffs_in_var(const std::vector<MultiPoly>& cs, int var, int nvars) {
    MultiPoly p(nvars);
    for (std::size_t k = 0; k < cs.size(); ++k) {
        if (cs[k].is_zero()) continue;
        p += cs[k] * MultiPoly::variable(nvars, var, static_cast<std::int64_t>(k));
    }
    return p;
}

// Pseudo-remainder of a by b in variable var: lc(b)^(da-db+1) a = q b + r.
MultiPoly pseudo_rem(const MultiPoly& a, const MultiPoly& b, int var) {
    std::int64_t db = b.degree_in(var);
    auto bc = coeffs_in_var(b, var);
    const MultiPoly& lb = bc.back();
    MultiPoly r = a;
    std::int64_t e = a.degree_in(var) - db + 1;
    while (!r.is_zero() && r.degree_in(var) >= db) {
        auto rc = coeffs_in_var(r, var);
        MultiPoly t = rc.back() * MultiPoly::variable(r.nvars(), var, r.degree_in(var) - db);
        r = lb * r - t * b;
        --e;
    }
    while (e-- > 0) r = lb * r;
    return r;
}

MultiPoly gcd_rec(const MultiPoly& f, const MultiPoly& g);

// gcd of the var-coefficients of p (the content in var).
MultiPoly content_in_var(const MultiPoly& p, int var) {
    auto cs = coeffs_in_var(p, var);
    MultiPoly c(p.nvars());
    for (const auto& q : cs) {
        if (q.is_zero()) continue;
        c = c.is_zero() ? q.primitive_part() : gcd_rec(c, q);
        if (c.is_constant()) break;
    }
    return c.primitive_part();
}

MultiPoly gcd_rec(const MultiPoly& f, const MultiPoly& g) {
    if (f.is_zero()) return g.primitive_part();
    if (g.is_zero()) return f.primitive_part();
    int n = f.nvars();

    // Split off the common monomial factor.
    Expo mf = monomial_gcd({f}), mg = monomial_gcd({g});
    Expo common(n);
    bool has_common = false;
    for (int i = 0; i < n; ++i) {
        common[i] = std::min(mf[i], mg[i]);
        if (common[i] > 0) has_common = true;
    }
    if (has_common) {
        MultiPoly mono = MultiPoly::monomial(n, common, Rat(1));
        return (mono * gcd_rec(divide_exact(f, mono), divide_exact(g, mono))).primitive_part();
    }

    MultiPoly fp = f.primitive_part(), gp = g.primitive_part();
    if (fp.is_constant() || gp.is_constant()) return MultiPoly::constant(n, Rat(1));

    // Main variable: lowest combined degree among variables present in both.
    int var = -1;
    std::int64_t best = 0;
    for (int i = 0; i < n; ++i) {
        std::int64_t df = fp.degree_in(i), dg = gp.degree_in(i);
        if (df > 0 && dg > 0) {
            std::int64_t w = df + dg;
            if (var < 0 || w < best) { var = i; best = w; }
        }
    }
    if (var < 0) return MultiPoly::constant(n, Rat(1));

    MultiPoly cf = content_in_var(fp, var), cg = content_in_var(gp, var);
    MultiPoly c = gcd_rec(cf, cg);
    MultiPoly a = divide_exact(fp, cf), b = divide_exact(gp, cg);
    if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);

    // Primitive PRS.
    for (;;) {
        MultiPoly r = pseudo_rem(a, b, var);
        if (r.is_zero()) break;
        if (r.degree_in(var) == 0) return c;  // coprime in var
        a = std::move(b);
        b = divide_exact(r, content_in_var(r, var)).primitive_part();
    }
    return (c * b).primitive_part();
}

}  // namespace

MultiPoly gcd_poly(const MultiPoly& f, const MultiPoly& g) {
    if (f.nvars() != g.nvars()) throw std::invalid_argument("gcd_poly: variable count mismatch");
    return gcd_rec(f, g).primitive_part();
}

MultiPoly gcd_poly(const std::vector<MultiPoly>& polys) {
    if (polys.empty()) throw std::invalid_argument("gcd_poly: empty list");
    MultiPoly g(polys.front().nvars());
    for (const MultiPoly& p : polys) {
        g = g.is_zero() ? p.primitive_part() : gcd_poly(g, p);
        if (!g.is_zero() && g.is_constant()) return MultiPoly::constant(g.nvars(), Rat(1));
    }
    if (g.is_zero()) return g;
    return g;
}

Expo monomial_gcd(const std::vector<MultiPoly>& polys) {
    if (polys.empty()) throw std::invalid_argument("monomial_gcd: empty list");
    int n = polys.front().nvars();
    Expo m;
    for (const MultiPoly& p : polys)
        for (const auto& [e, c] : p.terms()) {
            if (m.empty()) m = e;
            else
                for (int i = 0; i < n; ++i) m[i] = std::min(m[i], e[i]);
        }
    if (m.empty()) m.assign(n, 0);
    return m;
}

MultiPoly substitute(const MultiPoly& p, const std::vector<MultiPoly>& values) {
    if (static_cast<int>(values.size()) != p.nvars())
        throw std::invalid_argument("substitute: wrong value count");
    int out_vars = values.empty() ? 0 : values.front().nvars();
    std::vector<std::map<std::int64_t, MultiPoly>> cache(values.size());
    MultiPoly total(out_vars);
    for (const auto& [e, c] : p.terms()) {
        MultiPoly t = MultiPoly::constant(out_vars, c);
        for (int i = 0; i < p.nvars(); ++i) {
            if (e[i] == 0) continue;
            auto it = cache[i].find(e[i]);
            if (it == cache[i].end()) it = cache[i].emplace(e[i], values[i].pow(e[i])).first;
            t *= it->second;
        }
        total += t;
    }
    return total;
}

RationalFunction::RationalFunction(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (num_.nvars() != den_.nvars()) throw std::invalid_argument("RationalFunction: variable count mismatch");
    if (den_.is_zero()) throw std::invalid_argument("RationalFunction: zero denominator");
    normalize();
}

RationalFunction RationalFunction::from_poly(MultiPoly p) {
    int n = p.nvars();
    return RationalFunction(std::move(p), MultiPoly::constant(n, Rat(1)));
}

MultiPoly RationalFunction::as_polynomial() const {
    if (!is_polynomial()) throw std::logic_error("as_polynomial: denominator not constant");
    MultiPoly r(num_.nvars());
    Rat d = den_.constant_value();
    for (const auto& [e, c] : num_.terms()) r.add_term(e, c / d);
    return r;
}

void RationalFunction::normalize() {
    if (num_.is_zero()) {
        den_ = MultiPoly::constant(num_.nvars(), Rat(1));
        return;
    }
    MultiPoly g = gcd_poly(num_, den_);
    if (!g.is_constant()) {
        num_ = divide_exact(num_, g);
        den_ = divide_exact(den_, g);
    }
    Rat cn = num_.content(), cd = den_.content();
    if (den_.leading_coefficient() < 0) cd = -cd;
    MultiPoly n_prim(num_.nvars()), d_prim(num_.nvars());
    for (const auto& [e, c] : num_.terms()) n_prim.add_term(e, c / cn);
    for (const auto& [e, c] : den_.terms()) d_prim.add_term(e, c / cd);
    Rat ratio = cn / cd;  // lowest terms; sign on the numerator
    Int p(ratio.get_num()), q(ratio.get_den());
    MultiPoly n_final(num_.nvars()), d_final(num_.nvars());
    for (const auto& [e, c] : n_prim.terms()) n_final.add_term(e, c * Rat(p));
    for (const auto& [e, c] : d_prim.terms()) d_final.add_term(e, c * Rat(q));
    num_ = std::move(n_final);
    den_ = std::move(d_final);
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw std::invalid_argument("RationalFunction /: division by zero");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFunction RationalFunction::pow(std::int64_t e) const {
    if (e >= 0) return RationalFunction(num_.pow(e), den_.pow(e));
    if (is_zero()) throw std::invalid_argument("RationalFunction::pow: 0 to negative power");
    return RationalFunction(den_.pow(-e), num_.pow(-e));
}

std::optional<Rat> RationalFunction::evaluate(const std::vector<Rat>& point) const {
    Rat d = den_.evaluate(point);
    if (d == 0) return std::nullopt;
    return num_.evaluate(point) / d;
}

RationalFunction substitute(const MultiPoly& p, const std::vector<RationalFunction>& values) {
    if (static_cast<int>(values.size()) != p.nvars())
        throw std::invalid_argument("substitute: wrong value count");
    int out_vars = values.empty() ? 0 : values.front().nvars();
    std::vector<std::map<std::int64_t, RationalFunction>> cache(values.size());
    RationalFunction total(out_vars);
    for (const auto& [e, c] : p.terms()) {
        RationalFunction t = RationalFunction::from_poly(MultiPoly::constant(out_vars, c));
        for (int i = 0; i < p.nvars(); ++i) {
            if (e[i] == 0) continue;
            auto it = cache[i].find(e[i]);
            if (it == cache[i].end()) it = cache[i].emplace(e[i], values[i].pow(e[i])).first;
            t = t * it->second;
        }
        total = total + t;
    }
    return total;
}

RationalFunction substitute(const RationalFunction& f, const std::vector<RationalFunction>& values) {
    RationalFunction n = substitute(f.num(), values);
    RationalFunction d = substitute(f.den(), values);
    if (d.is_zero()) throw std::domain_error("substitute: denominator vanishes identically");
    return n / d;
}

}  // namespace orbitlab
