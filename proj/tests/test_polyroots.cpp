#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "orbitlab/intmat.hpp"
#include "orbitlab/polyroots.hpp"

using namespace orbitlab;

namespace {
std::vector<Int> coeffs(std::initializer_list<long> c) {
    std::vector<Int> v;
    for (long x : c) v.emplace_back(x);
    return v;
}
}  // namespace

TEST_CASE("golden ratio squared from t^2 - 3t + 1") {
    double r = max_root_modulus(coeffs({1, -3, 1}));
    CHECK(std::abs(r - (3.0 + std::sqrt(5.0)) / 2.0) < 1e-12);
}

TEST_CASE("pure complex pair t^2 + 1") {
    PolyRoots r = poly_roots(coeffs({1, 0, 1}));
    CHECK(r.real_roots.empty());
    REQUIRE(r.complex_roots.size() == 1);
    CHECK(std::abs(r.max_modulus - 1.0) < 1e-12);
}

TEST_CASE("mixed real and complex: t^3 - 2t^2 + t - 2 = (t-2)(t^2+1)") {
    PolyRoots r = poly_roots(coeffs({-2, 1, -2, 1}));
    REQUIRE(r.real_roots.size() == 1);
    CHECK(std::abs(r.real_roots[0] - 2.0) < 1e-12);
    REQUIRE(r.complex_roots.size() == 1);
    CHECK(std::abs(std::abs(r.complex_roots[0]) - 1.0) < 1e-12);
    CHECK(std::abs(r.max_modulus - 2.0) < 1e-12);
}

TEST_CASE("repeated roots handled through the squarefree part") {
    // (t-1)^2 (t+3)
    PolyRoots r = poly_roots(coeffs({3, -5, 1, 1}));
    REQUIRE(r.real_roots.size() == 2);
    CHECK(std::abs(r.real_roots[0] + 3.0) < 1e-12);
    CHECK(std::abs(r.real_roots[1] - 1.0) < 1e-12);
    CHECK(std::abs(r.max_modulus - 3.0) < 1e-12);
}

TEST_CASE("complex dominant pair: t^2 - 3t + 3 has modulus sqrt(3)") {
    double r = max_root_modulus(coeffs({3, -3, 1}));
    CHECK(std::abs(r - std::sqrt(3.0)) < 1e-12);
}

TEST_CASE("cyclotomic-like t^4 + t^3 + t^2 + t + 1 has modulus 1") {
    double r = max_root_modulus(coeffs({1, 1, 1, 1, 1}));
    CHECK(std::abs(r - 1.0) < 1e-10);
}

TEST_CASE("integer roots") {
    // (t-2)(t+5)(t-1) = t^3 + 2t^2 - 13t + 10
    auto r = integer_roots(coeffs({10, -13, 2, 1}));
    REQUIRE(r.size() == 3);
    CHECK(r[0] == -5);
    CHECK(r[1] == 1);
    CHECK(r[2] == 2);
    CHECK(integer_roots(coeffs({1, -3, 1})).empty());
    auto z = integer_roots(coeffs({0, 0, 1}));  // t^2
    REQUIRE(z.size() == 1);
    CHECK(z[0] == 0);
}

TEST_CASE("spectral radius of a compound matrix agrees with |det| at top level") {
    IntMat m(2, 2, {Int(2), Int(1), Int(1), Int(1)});
    double d2 = max_root_modulus(char_poly(compound_matrix(m, 2)));
    CHECK(std::abs(d2 - 1.0) < 1e-12);
    IntMat s(2, 2, {Int(2), Int(0), Int(0), Int(2)});
    CHECK(std::abs(max_root_modulus(char_poly(compound_matrix(s, 2))) - 4.0) < 1e-12);
}
