#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "eoq/ring.hpp"

#include <random>

using namespace eoq;

namespace {

// Q[x] with x and 1-x inverted; the standard two-chart test bed.
RingPtr charts() {
    std::vector<std::string> v = {"x"};
    return make_ring(v, {Polynomial::parse("x", v), Polynomial::parse("1 - x", v)});
}

// Q[x, T] with T and g = T^2 + x*T + 1 inverted.
RingPtr param_ring() {
    std::vector<std::string> v = {"x", "T"};
    return make_ring(v, {Polynomial::parse("T", v), Polynomial::parse("T^2 + x*T + 1", v)});
}

RingElement elem(const RingPtr& r, const std::string& num, std::vector<int> den) {
    return RingElement::from(r, Polynomial::parse(num, r->variables), std::move(den));
}

RingElement random_element(const RingPtr& r, std::mt19937_64& rng, int maxden = 2) {
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<int> deg(0, 2);
    std::uniform_int_distribution<int> den(0, maxden);
    Polynomial num(r->nvars());
    for (int t = 0; t < 3; ++t) {
        Exponents e(r->nvars());
        for (auto& x : e)
            x = deg(rng);
        num += Polynomial::monomial(r->nvars(), e, Rational(coeff(rng)));
    }
    std::vector<int> d(r->inverted.size());
    for (auto& x : d)
        x = den(rng);
    return RingElement::from(r, num, d);
}

} // namespace

TEST_CASE("descriptor validation") {
    CHECK_THROWS_AS(make_ring({"x", "x"}, {}), std::invalid_argument);
    CHECK_THROWS_AS(make_ring({"2x"}, {}), std::invalid_argument);
    CHECK_THROWS_AS(make_ring({"T", "x"}, {}), std::invalid_argument); // T must sit last
    std::vector<std::string> v = {"x"};
    CHECK_THROWS_AS(make_ring(v, {Polynomial::parse("3", v)}), std::invalid_argument);
    CHECK_THROWS_AS(make_ring(v, {Polynomial::parse("x", v), Polynomial::parse("x", v)}),
                    std::invalid_argument);
    CHECK(make_ring({"x", "y", "T"}, {})->nvars() == 3);
}

TEST_CASE("fresh variables slot in before a trailing T") {
    RingPtr r = param_ring();
    RingPtr s = with_variable(r, "W");
    CHECK(s->variables == std::vector<std::string>{"x", "W", "T"});
    // Generators follow the renumbering.
    CHECK(s->inverted[1] == Polynomial::parse("T^2 + x*T + 1", s->variables));
    RingPtr t = with_variable(charts(), "T");
    CHECK(t->variables == std::vector<std::string>{"x", "T"});
}

TEST_CASE("two-chart arithmetic: 1/x + 1/(1-x)") {
    RingPtr r = charts();
    RingElement a = elem(r, "1", {1, 0});
    RingElement b = elem(r, "1", {0, 1});
    RingElement sum = a + b;
    CHECK(sum == elem(r, "1", {1, 1}));
    CHECK(sum.denominator_exponents() == std::vector<int>{1, 1});
    // Equality is representation-free.
    CHECK(elem(r, "1", {1, 0}) == elem(r, "1 - x", {1, 1}));
    CHECK(elem(r, "1", {1, 0}) != elem(r, "1", {0, 1}));
}

TEST_CASE("normalization cancels exact generator powers") {
    RingPtr r = charts();
    CHECK(elem(r, "x^2 + x", {1, 0}).normalized().denominator_exponents() ==
          std::vector<int>{0, 0});
    CHECK(elem(r, "x^2 + x", {1, 0}).normalized().numerator() ==
          Polynomial::parse("x + 1", r->variables));
    // Literal construction keeps its representation until asked.
    CHECK(elem(r, "x^3", {2, 0}).denominator_exponents() == std::vector<int>{2, 0});

    auto in = elem(r, "x^3", {2, 0}).integral();
    REQUIRE(in.has_value());
    CHECK(*in == Polynomial::parse("x", r->variables));
    CHECK(!elem(r, "1", {1, 0}).integral().has_value());

    auto c = elem(r, "x^2", {1, 1}).cleared_of(0);
    REQUIRE(c.has_value());
    CHECK(c->denominator_exponents() == std::vector<int>{0, 1});
    CHECK(!elem(r, "x^2", {1, 1}).cleared_of(1).has_value());
}

TEST_CASE("zero stays canonical") {
    RingPtr r = charts();
    RingElement z = elem(r, "x", {1, 0}) - elem(r, "x", {1, 0});
    CHECK(z.is_zero());
    CHECK(z == RingElement::zero(r));
    CHECK(z.denominator_exponents() == std::vector<int>{0, 0});
}

TEST_CASE("lift and restrict move along descriptor inclusions") {
    RingPtr small = charts();
    std::vector<std::string> v = {"x", "T"};
    RingPtr big = make_ring(v, {Polynomial::parse("x", v), Polynomial::parse("1 - x", v),
                                Polynomial::parse("T", v)});
    RingElement e = elem(small, "x^2 - 1", {1, 1});
    RingElement up = lift(e, big);
    CHECK(up.ring() == big);
    CHECK(restrict_to(up, small) == e);
    // A genuine T denominator cannot come back down.
    RingElement t = RingElement::from(big, Polynomial::parse("1", v), {0, 0, 1});
    CHECK_THROWS_AS(restrict_to(t, small), std::invalid_argument);
    // ... but a removable one can.
    RingElement t2 = RingElement::from(big, Polynomial::parse("x*T", v), {0, 0, 1});
    CHECK(restrict_to(t2, small) == elem(small, "x", {0, 0}));
    CHECK_THROWS_AS(lift(elem(small, "1", {1, 0}), make_ring({"x"}, {})),
                    std::invalid_argument);
}

TEST_CASE("evaluate substitution removes the variable") {
    std::vector<std::string> v = {"x", "T"};
    RingPtr r = make_ring(v, {Polynomial::parse("T^2 + x*T + 1", v)});
    auto at0 = Substitution::evaluate(r, "T", Polynomial::constant(2, Rational(0)));
    CHECK(at0.target()->variables == std::vector<std::string>{"x"});
    // g(0) = 1, so the g-denominator dies into coefficients.
    CHECK(at0.target()->inverted.empty());
    RingElement e = RingElement::from(r, Polynomial::parse("x*T^2 + x", v), {2});
    CHECK(at0.apply(e) == RingElement::variable(at0.target(), "x"));
    // A substitution that kills an inverted generator is rejected outright.
    CHECK_THROWS_AS(Substitution::evaluate(param_ring(), "T", Polynomial::constant(2, Rational(0))),
                    std::invalid_argument);

    // Constants other than 1 scale instead of vanish: h(0) = 2.
    RingPtr r2 = make_ring(v, {Polynomial::parse("T + 2", v)});
    auto s2 = Substitution::evaluate(r2, "T", Polynomial::constant(2, Rational(0)));
    RingElement q = s2.apply(RingElement::from(r2, Polynomial::parse("x", v), {2}));
    CHECK(q == RingElement::variable(s2.target(), "x") * Rational(1, 4));
}

TEST_CASE("evaluate is a ring homomorphism") {
    RingPtr r = param_ring();
    auto at1 = Substitution::evaluate(r, "T", Polynomial::constant(2, Rational(1)));
    // g(1) = x + 2 stays a denominator generator.
    REQUIRE(at1.target()->inverted.size() == 1);
    CHECK(at1.target()->inverted[0] == Polynomial::parse("x + 2", {"x"}));
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        RingElement a = random_element(r, rng);
        RingElement b = random_element(r, rng);
        CHECK(at1.apply(a + b) == at1.apply(a) + at1.apply(b));
        CHECK(at1.apply(a * b) == at1.apply(a) * at1.apply(b));
    }
}

TEST_CASE("scale substitution stays in the ring") {
    std::vector<std::string> v = {"x", "T"};
    RingPtr r = make_ring(v, {Polynomial::parse("x", v)});
    auto s = Substitution::scale(r, "T", Polynomial::parse("x", v));
    CHECK(s.target() == r);
    CHECK(s.apply(elem(r, "T^2", {0})) == elem(r, "x^2*T^2", {0}));
    std::mt19937_64 rng(12);
    for (int t = 0; t < 200; ++t) {
        RingElement a = random_element(r, rng);
        RingElement b = random_element(r, rng);
        CHECK(s.apply(a + b) == s.apply(a) + s.apply(b));
        CHECK(s.apply(a * b) == s.apply(a) * s.apply(b));
    }
    // Scaling that moves an inverted generator off the list is rejected.
    CHECK_THROWS_AS(Substitution::scale(r, "x", Polynomial::parse("2", v)),
                    std::invalid_argument);
}

TEST_CASE("swap to inverse: target generators") {
    RingPtr r = param_ring();
    auto s = Substitution::swap_to_inverse(r, "T", "U");
    CHECK(s.target()->variables == std::vector<std::string>{"x", "U"});
    // Fresh variable first, then the reciprocal of g (coefficients reversed).
    REQUIRE(s.target()->inverted.size() == 2);
    CHECK(s.target()->inverted[0] == Polynomial::parse("U", {"x", "U"}));
    CHECK(s.target()->inverted[1] == Polynomial::parse("U^2 + x*U + 1", {"x", "U"}));
    CHECK_THROWS_AS(Substitution::swap_to_inverse(param_ring(), "x", "U"),
                    std::invalid_argument);
}

TEST_CASE("swap to inverse: images") {
    RingPtr r = param_ring();
    auto s = Substitution::swap_to_inverse(r, "T", "U");
    RingPtr u = s.target();
    auto uelem = [&](const std::string& num, std::vector<int> den) {
        return RingElement::from(u, Polynomial::parse(num, u->variables), std::move(den));
    };
    CHECK(s.apply(elem(r, "T", {0, 0})) == uelem("1", {1, 0}));
    CHECK(s.apply(elem(r, "1", {1, 0})) == uelem("U", {0, 0}));
    CHECK(s.apply(elem(r, "x", {0, 0})) == uelem("x", {0, 0}));
    // g/T at T = 1/U is g*/U.
    CHECK(s.apply(elem(r, "T^2 + x*T + 1", {1, 0})) == uelem("U^2 + x*U + 1", {1, 0}));
    // 1/g at T = 1/U is U^2/g*.
    CHECK(s.apply(elem(r, "1", {0, 1})) == uelem("U^2", {0, 1}));
}

TEST_CASE("swap to inverse is a ring homomorphism and involutive") {
    RingPtr r = param_ring();
    auto s = Substitution::swap_to_inverse(r, "T", "U");
    auto back = Substitution::swap_to_inverse(s.target(), "U", "T");
    // Round trip lands in the original descriptor.
    CHECK(same_ring(back.target(), r));
    std::mt19937_64 rng(13);
    for (int t = 0; t < 200; ++t) {
        RingElement a = random_element(r, rng);
        RingElement b = random_element(r, rng);
        CHECK(s.apply(a + b) == s.apply(a) + s.apply(b));
        CHECK(s.apply(a * b) == s.apply(a) * s.apply(b));
        CHECK(back.apply(s.apply(a)) == a);
    }
}

TEST_CASE("rename substitution") {
    RingPtr r = charts();
    auto s = Substitution::rename(r, "x", "w");
    CHECK(s.target()->variables == std::vector<std::string>{"w"});
    CHECK(s.apply(elem(r, "x + 1", {1, 0})).numerator() ==
          Polynomial::parse("w + 1", {"w"}));
}

TEST_CASE("string form") {
    RingPtr r = charts();
    CHECK(elem(r, "x + 1", {1, 2}).str() == "(x + 1)/(x*(-x + 1)^2)");
    CHECK(elem(r, "x", {0, 0}).str() == "x");
}
