#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "orbitlab/parser.hpp"

using namespace orbitlab;

namespace {
const std::vector<std::string> XY{"x1", "x2"};
}

TEST_CASE("single monomial") {
    auto r = parse_expression("x1^2", XY);
    REQUIRE(std::holds_alternative<MultiPoly>(r));
    const MultiPoly& p = std::get<MultiPoly>(r);
    REQUIRE(p.terms().size() == 1);
    CHECK(p.terms().begin()->first == Expo{2, 0});
    CHECK(p.terms().begin()->second == 1);
}

TEST_CASE("sum of product and constant") {
    auto r = parse_expression("x1*x2 + 1", XY);
    const MultiPoly& p = std::get<MultiPoly>(r);
    REQUIRE(p.terms().size() == 2);
    CHECK(p.terms().count(Expo{1, 1}) == 1);
    CHECK(p.terms().count(Expo{0, 0}) == 1);
}

TEST_CASE("top-level slash yields a rational function") {
    auto r = parse_expression("(x1^2-1)/(x1)", XY);
    REQUIRE(std::holds_alternative<RationalFunction>(r));
    const RationalFunction& f = std::get<RationalFunction>(r);
    MultiPoly x = MultiPoly::variable(2, 0), one = MultiPoly::constant(2, Rat(1));
    CHECK(f.num() == x * x - one);
    CHECK(f.den() == x);
}

TEST_CASE("rational literals") {
    auto r = parse_expression("3/4*x1 - 1/2", XY);
    const MultiPoly& p = std::get<MultiPoly>(r);
    CHECK(p.terms().at(Expo{1, 0}) == Rat(3, 4));
    CHECK(p.terms().at(Expo{0, 0}) == Rat(-1, 2));
}

TEST_CASE("whitespace is insignificant") {
    auto a = parse_expression("  x1 ^ 2 * x2+ 3 ", XY);
    auto b = parse_expression("x1^2*x2+3", XY);
    CHECK(std::get<MultiPoly>(a) == std::get<MultiPoly>(b));
}

TEST_CASE("unary minus and parentheses") {
    auto r = parse_expression("-(x1 - 2)*(x1 + 2)", XY);
    const MultiPoly& p = std::get<MultiPoly>(r);
    MultiPoly x = MultiPoly::variable(2, 0);
    CHECK(p == MultiPoly::constant(2, Rat(4)) - x * x);
}

TEST_CASE("errors carry positions") {
    CHECK_THROWS_AS(parse_expression("x1 + ", XY), ParseError);
    CHECK_THROWS_AS(parse_expression("x3", XY), ParseError);
    CHECK_THROWS_AS(parse_expression("x1 ^ -2", XY), ParseError);
    CHECK_THROWS_AS(parse_expression("(x1", XY), ParseError);
    CHECK_THROWS_AS(parse_expression("x1)/x2(", XY), ParseError);
    CHECK_THROWS_AS(parse_expression("x1/(x2 - x2)", XY), ParseError);
    CHECK_THROWS_AS(parse_expression("1/0", XY), ParseError);
    try {
        parse_expression("x1 + x9", XY);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.position() == 5);
    }
}

TEST_CASE("division chain is rejected") {
    CHECK_THROWS_AS(parse_expression("x1/x2/x1", XY), ParseError);
}

TEST_CASE("serialize round trip on fixed cases") {
    for (const char* s : {"x1^2", "x1*x2 + 1", "-x1 + 2", "3/4*x1^3 - x2", "0"}) {
        auto r = parse_expression(s, XY);
        const MultiPoly& p = std::get<MultiPoly>(r);
        auto r2 = parse_expression(serialize(p, XY), XY);
        CHECK(std::get<MultiPoly>(r2) == p);
    }
}

TEST_CASE("leading negative power term round-trips") {
    MultiPoly p(2);
    p.add_term({2, 0}, Rat(-1));
    p.add_term({0, 0}, Rat(1));
    std::string s = serialize(p, XY);
    auto r = parse_expression(s, XY);
    CHECK(std::get<MultiPoly>(r) == p);
}

TEST_CASE("property: parse(serialize(p)) == p") {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<int> nt(1, 6), ex(0, 5), co(-9, 9), de(1, 9);
    for (int t = 0; t < 200; ++t) {
        MultiPoly p(2);
        int terms = nt(rng);
        for (int i = 0; i < terms; ++i) {
            Expo e{ex(rng), ex(rng)};
            p.add_term(e, Rat(co(rng), de(rng)));
        }
        std::string s = serialize(p, XY);
        auto r = parse_expression(s, XY);
        REQUIRE(std::holds_alternative<MultiPoly>(r));
        CHECK(std::get<MultiPoly>(r) == p);
    }
}

TEST_CASE("rational function serialize round trip") {
    auto r = parse_expression("(x1^2 - x2)/(x1*x2 + 2)", XY);
    const RationalFunction& f = std::get<RationalFunction>(r);
    auto r2 = parse_expression(serialize(f, XY), XY);
    REQUIRE(std::holds_alternative<RationalFunction>(r2));
    CHECK(std::get<RationalFunction>(r2) == f);
}
