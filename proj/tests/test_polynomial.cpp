#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "eoq/errors.hpp"
#include "eoq/polynomial.hpp"

#include <random>

using namespace eoq;

namespace {

const std::vector<std::string> XY = {"x", "y"};
const std::vector<std::string> XT = {"x", "T"};

Polynomial P(const std::string& s, const std::vector<std::string>& names = XY) {
    return Polynomial::parse(s, names);
}

Rational frac(int n, int d) {
    Rational q(n, d);
    q.canonicalize();
    return q;
}

// Independent evaluation oracle: plug rational values into every term.
Rational eval(const Polynomial& p, const std::vector<Rational>& at) {
    Rational s(0);
    for (const auto& [e, c] : p.terms()) {
        Rational t = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k)
                t *= at[i];
        s += t;
    }
    return s;
}

Polynomial random_poly(std::mt19937_64& rng, std::size_t nvars, int maxdeg, int maxterms) {
    std::uniform_int_distribution<int> coeff(-5, 5);
    std::uniform_int_distribution<int> deg(0, maxdeg);
    std::uniform_int_distribution<int> nterms(1, maxterms);
    Polynomial p(nvars);
    int k = nterms(rng);
    for (int t = 0; t < k; ++t) {
        Exponents e(nvars);
        for (auto& x : e)
            x = deg(rng);
        p += Polynomial::monomial(nvars, e, Rational(coeff(rng)));
    }
    return p;
}

} // namespace

TEST_CASE("parse and print round trip") {
    CHECK(P("x^2 + 2*x*y - 3").str(XY) == "2*x*y + x^2 - 3");
    CHECK(P("0").is_zero());
    CHECK(P("1").is_one());
    CHECK(P("-x + x").is_zero());
    CHECK(P("1/2*x + 1/2*x").str(XY) == "x");
    CHECK(P("(1 - x)*(1 + x)") == P("1 - x^2"));
    CHECK(P("x^3") == Polynomial::monomial(2, {3, 0}, 1));
    // Printing puts the later (heavier) variable first.
    CHECK(P("x + y").str(XY) == "y + x");
    CHECK_THROWS_AS(P("x +"), ParseError);
    CHECK_THROWS_AS(P("z"), ParseError);
    CHECK_THROWS_AS(P("x^-1"), ParseError);
    CHECK_THROWS_AS(P("1/0"), ParseError);
}

TEST_CASE("arithmetic agrees with rational evaluation") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> pt(-4, 4);
    for (int trial = 0; trial < 300; ++trial) {
        Polynomial a = random_poly(rng, 2, 3, 4);
        Polynomial b = random_poly(rng, 2, 3, 4);
        std::vector<Rational> at = {frac(pt(rng), 3), Rational(pt(rng))};
        CHECK(eval(a + b, at) == eval(a, at) + eval(b, at));
        CHECK(eval(a - b, at) == eval(a, at) - eval(b, at));
        CHECK(eval(a * b, at) == eval(a, at) * eval(b, at));
        CHECK(eval(-a, at) == -eval(a, at));
        CHECK(eval(a.pow(3), at) == eval(a, at) * eval(a, at) * eval(a, at));
    }
}

TEST_CASE("compose substitutes one variable") {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> pt(-3, 3);
    for (int trial = 0; trial < 200; ++trial) {
        Polynomial a = random_poly(rng, 2, 3, 4);
        Polynomial v = random_poly(rng, 2, 2, 3);
        // The value may not involve the substituted variable.
        Polynomial value = v.compose(0, Polynomial::constant(2, Rational(1)));
        std::vector<Rational> at = {Rational(pt(rng)), frac(pt(rng), 2)};
        std::vector<Rational> moved = {eval(value, at), at[1]};
        CHECK(eval(a.compose(0, value), at) == eval(a, moved));
    }
    CHECK(P("x^2 + y").compose(0, P("y")) == P("y^2 + y"));
    CHECK(P("x^2 + y").compose(1, P("0")) == P("x^2"));
}

TEST_CASE("exact division multiplies back") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 200; ++trial) {
        Polynomial a = random_poly(rng, 2, 3, 3);
        Polynomial q = random_poly(rng, 2, 2, 2);
        if (q.is_zero() || q.is_constant())
            continue;
        auto d = exact_divide(a * q, q);
        REQUIRE(d.has_value());
        CHECK(*d == a);
        // Adding 1 spoils divisibility by any nonconstant factor.
        auto bad = exact_divide(a * q + Polynomial::constant(2, Rational(1)), q);
        CHECK(!bad.has_value());
    }
    CHECK(*exact_divide(P("x^3 + x^2"), P("x + 1")) == P("x^2"));
    CHECK(!exact_divide(P("x^2 + 1"), P("x")).has_value());
    CHECK_THROWS_AS(exact_divide(P("x"), P("0")), std::invalid_argument);
}

TEST_CASE("degrees, occurrence, coefficients") {
    Polynomial p = P("x^3*y + 2*y^2 - 5");
    CHECK(p.degree_in(0) == 3);
    CHECK(p.degree_in(1) == 2);
    CHECK(p.involves(0));
    CHECK(!P("y + 1").involves(0));
    CHECK(p.coefficient({3, 1}) == 1);
    CHECK(p.coefficient({0, 0}) == -5);
    CHECK(p.coefficient({1, 1}) == 0);
    CHECK(Polynomial(2).degree_in(0) == -1);
}

TEST_CASE("reciprocal reverses coefficients in one variable") {
    // Symmetric coefficient lists are fixed.
    CHECK(P("T^2 + x*T + 1", XT).reciprocal_in(1) == P("T^2 + x*T + 1", XT));
    CHECK(P("T^2 + 2*T", XT).reciprocal_in(1) == P("2*T + 1", XT));
    CHECK(P("x^2 + 3", XT).reciprocal_in(1) == P("x^2 + 3", XT));
    // Twice is the identity when the constant term survives.
    Polynomial g = P("2*T^3 + x*T + 5", XT);
    CHECK(g.reciprocal_in(1).reciprocal_in(1) == g);
}

TEST_CASE("dense univariate coefficient lists") {
    auto c = P("3*T^2 + 1", XT).dense_univariate(1);
    REQUIRE(c.has_value());
    CHECK(*c == std::vector<Rational>{1, 0, 3});
    CHECK(!P("x*T", XT).dense_univariate(1).has_value());
    auto k = P("7", XT).dense_univariate(1);
    REQUIRE(k.has_value());
    CHECK(*k == std::vector<Rational>{7});
}

TEST_CASE("remap embeds into a larger variable space") {
    Polynomial p = P("x^2 + y");
    Polynomial q = p.remap(3, {0, 2});
    CHECK(q == Polynomial::parse("x^2 + T", {"x", "W", "T"}));
    CHECK(q.nvars() == 3);
}
