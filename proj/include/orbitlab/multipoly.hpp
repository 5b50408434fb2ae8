#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orbitlab/rational.hpp"

namespace orbitlab {

using Expo = std::vector<std::int64_t>;

/// Graded lexicographic order, largest term first: higher total degree wins,
/// ties broken lexicographically. Keeps leading terms at begin().
struct GradedLexGreater {
    bool operator()(const Expo& a, const Expo& b) const;
};

/// Sparse multivariate polynomial over Q with a fixed variable count.
/// Terms are kept in graded-lex descending order and never store a zero
/// coefficient.
class MultiPoly {
public:
    using TermMap = std::map<Expo, Rat, GradedLexGreater>;

    explicit MultiPoly(int nvars = 0) : nvars_(nvars) {}
    static MultiPoly constant(int nvars, const Rat& c);
    static MultiPoly variable(int nvars, int index, std::int64_t power = 1);
    static MultiPoly monomial(int nvars, const Expo& e, const Rat& c);

    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rat constant_value() const;  // requires is_constant()

    std::int64_t total_degree() const;          // -1 for the zero polynomial
    std::int64_t degree_in(int var) const;      // -1 for the zero polynomial
    const Expo& leading_exponent() const;
    const Rat& leading_coefficient() const;

    void add_term(const Expo& e, const Rat& c);

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    MultiPoly pow(std::int64_t e) const;

    /// Positive rational c with (*this)/c integer-primitive; 0 for zero poly.
    Rat content() const;
    /// Integer coefficients with gcd 1 and positive leading coefficient.
    MultiPoly primitive_part() const;

    bool is_homogeneous() const;

    Rat evaluate(const std::vector<Rat>& point) const;

private:
    int nvars_;
    TermMap terms_;
};

/// Exact quotient when divisor | dividend, nullopt otherwise.
std::optional<MultiPoly> try_divide(const MultiPoly& dividend, const MultiPoly& divisor);
MultiPoly divide_exact(const MultiPoly& dividend, const MultiPoly& divisor);

/// Polynomial gcd over Q, returned integer-primitive with positive leading
/// coefficient. gcd(0, g) = primitive(g).
MultiPoly gcd_poly(const MultiPoly& f, const MultiPoly& g);
MultiPoly gcd_poly(const std::vector<MultiPoly>& polys);

/// Componentwise minimum exponent over all terms (the monomial content).
Expo monomial_gcd(const std::vector<MultiPoly>& polys);

MultiPoly substitute(const MultiPoly& p, const std::vector<MultiPoly>& values);

/// Quotient of polynomials, kept canonical: polynomial gcd removed, integer
/// contents of numerator and denominator coprime, denominator's leading
/// coefficient positive.
class RationalFunction {
public:
    explicit RationalFunction(int nvars = 0)
        : num_(MultiPoly(nvars)), den_(MultiPoly::constant(nvars, Rat(1))) {}
    RationalFunction(MultiPoly num, MultiPoly den);
    static RationalFunction from_poly(MultiPoly p);

    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }
    int nvars() const { return num_.nvars(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    MultiPoly as_polynomial() const;  // requires is_polynomial()

    RationalFunction operator-() const;
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    RationalFunction pow(std::int64_t e) const;

    /// nullopt when the denominator vanishes at the point.
    std::optional<Rat> evaluate(const std::vector<Rat>& point) const;

private:
    MultiPoly num_, den_;
    void normalize();
};

RationalFunction substitute(const MultiPoly& p, const std::vector<RationalFunction>& values);
RationalFunction substitute(const RationalFunction& f, const std::vector<RationalFunction>& values);

}  // namespace orbitlab
