#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "eoq/quadspace.hpp"

#include <random>

using namespace eoq;

namespace {

RingPtr plain() {
    return make_ring({"x"}, {});
}

RingPtr charts() {
    std::vector<std::string> v = {"x"};
    return make_ring(v, {Polynomial::parse("x", v), Polynomial::parse("1 - x", v)});
}

RingElement c(const RingPtr& r, long k) {
    return RingElement::constant(r, Rational(k));
}

Vec vec_of(const RingPtr& r, std::initializer_list<long> vals) {
    Vec v;
    for (long k : vals)
        v.push_back(c(r, k));
    return v;
}

Vec random_vec(const RingPtr& r, std::size_t dim, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coeff(-5, 5);
    Vec v;
    for (std::size_t i = 0; i < dim; ++i) {
        Polynomial p = Polynomial::constant(r->nvars(), Rational(coeff(rng)));
        p += Polynomial::variable(r->nvars(), 0) * Polynomial::constant(r->nvars(), Rational(coeff(rng)));
        v.push_back(RingElement::from_polynomial(r, p));
    }
    return v;
}

// Swap x_i <-> y_i for every i; q = sum x_i y_i + z^2 is symmetric in each
// pair, so this permutation preserves the form.
Mat swap_all_pairs(const QuadSpace& qs, const RingPtr& r) {
    Mat m(r, qs.dim(), qs.dim());
    for (std::size_t i = 0; i < qs.n; ++i) {
        m.at(qs.xi(i), qs.yi(i)) = c(r, 1);
        m.at(qs.yi(i), qs.xi(i)) = c(r, 1);
    }
    m.at(qs.zi(), qs.zi()) = c(r, 1);
    return m;
}

// x_1 -> u*x_1, y_1 -> y_1/u for a unit u; the product x_1*y_1 is unchanged.
Mat hyperbolic_scale(const QuadSpace& qs, const RingPtr& r, const RingElement& u,
                     const RingElement& uinv) {
    Mat m = Mat::identity(r, qs.dim());
    m.at(qs.xi(0), qs.xi(0)) = u;
    m.at(qs.yi(0), qs.yi(0)) = uinv;
    return m;
}

} // namespace

TEST_CASE("matrix basics") {
    RingPtr r = plain();
    Mat id = Mat::identity(r, 3);
    CHECK(id.is_identity());
    CHECK(id.transpose() == id);

    Mat m(r, 2, 3);
    m.at(0, 1) = c(r, 5);
    m.at(1, 2) = c(r, -2);
    Mat t = m.transpose();
    CHECK(t.rows() == 3);
    CHECK(t.cols() == 2);
    CHECK(t.at(1, 0) == c(r, 5));
    CHECK(t.at(2, 1) == c(r, -2));

    // Product against hand-multiplied entries.
    Mat a(r, 2, 2), b(r, 2, 2);
    a.at(0, 0) = c(r, 1); a.at(0, 1) = c(r, 2);
    a.at(1, 0) = c(r, 3); a.at(1, 1) = c(r, 4);
    b.at(0, 0) = c(r, 5); b.at(0, 1) = c(r, 6);
    b.at(1, 0) = c(r, 7); b.at(1, 1) = c(r, 8);
    Mat ab = a * b;
    CHECK(ab.at(0, 0) == c(r, 19));
    CHECK(ab.at(0, 1) == c(r, 22));
    CHECK(ab.at(1, 0) == c(r, 43));
    CHECK(ab.at(1, 1) == c(r, 50));

    Vec v = vec_of(r, {1, -1});
    Vec av = a * v;
    CHECK(av[0] == c(r, -1));
    CHECK(av[1] == c(r, -1));

    CHECK(id * id == id);
    CHECK_FALSE(a == b);
}

TEST_CASE("quadratic form pinned values") {
    QuadSpace qs{2};
    RingPtr r = plain();

    // q(x1,x2,y1,y2,z) = x1*y1 + x2*y2 + z^2 at (1,2,3,4,5) = 3 + 8 + 25.
    CHECK(quadratic_form(qs, vec_of(r, {1, 2, 3, 4, 5})) == c(r, 36));
    CHECK(quadratic_form(qs, vec_of(r, {0, 0, 0, 0, 0})).is_zero());
    CHECK(quadratic_form(qs, vec_of(r, {0, 0, 0, 0, 1})) == c(r, 1));

    QuadSpace q1{1};
    CHECK(quadratic_form(q1, vec_of(r, {2, 3, -1})) == c(r, 7));
}

TEST_CASE("polarization identity") {
    std::mt19937_64 rng(411);
    RingPtr r = plain();
    for (std::size_t n = 1; n <= 3; ++n) {
        QuadSpace qs{n};
        for (int trial = 0; trial < 40; ++trial) {
            Vec u = random_vec(r, qs.dim(), rng);
            Vec v = random_vec(r, qs.dim(), rng);
            Vec sum;
            for (std::size_t i = 0; i < qs.dim(); ++i)
                sum.push_back(u[i] + v[i]);
            RingElement lhs = bilinear(qs, u, v) * c(r, 2);
            RingElement rhs =
                quadratic_form(qs, sum) - quadratic_form(qs, u) - quadratic_form(qs, v);
            CHECK(lhs == rhs);
            CHECK(bilinear(qs, u, v) == bilinear(qs, v, u));
        }
        // b(v, v) = q(v).
        Vec w = random_vec(r, qs.dim(), rng);
        CHECK(bilinear(qs, w, w) == quadratic_form(qs, w));
    }
}

TEST_CASE("gram matrix") {
    RingPtr r = plain();
    std::mt19937_64 rng(412);
    for (std::size_t n = 1; n <= 3; ++n) {
        QuadSpace qs{n};
        Mat b = gram_matrix(qs, r);
        Mat binv = gram_inverse(qs, r);
        CHECK((b * binv).is_identity());
        CHECK((binv * b).is_identity());
        CHECK(b.transpose() == b);

        // v^t B v = q(v).
        for (int trial = 0; trial < 20; ++trial) {
            Vec v = random_vec(r, qs.dim(), rng);
            Vec bv = b * v;
            RingElement acc = RingElement::zero(r);
            for (std::size_t i = 0; i < qs.dim(); ++i)
                acc = acc + v[i] * bv[i];
            CHECK(acc == quadratic_form(qs, v));
        }
    }
}

TEST_CASE("isometry recognition and inversion") {
    std::mt19937_64 rng(413);
    RingPtr r = charts();
    RingElement x = RingElement::variable(r, "x");
    RingElement xinv = RingElement::from(r, Polynomial::constant(1, Rational(1)), {1, 0});

    for (std::size_t n = 1; n <= 3; ++n) {
        QuadSpace qs{n};
        Mat id = Mat::identity(r, qs.dim());
        CHECK(is_isometry(qs, id));

        Mat sw = swap_all_pairs(qs, r);
        CHECK(is_isometry(qs, sw));
        CHECK(isometry_inverse(qs, sw) == sw); // involution

        Mat sc = hyperbolic_scale(qs, r, x, xinv);
        CHECK(is_isometry(qs, sc));
        Mat sci = isometry_inverse(qs, sc);
        CHECK((sc * sci).is_identity());
        CHECK((sci * sc).is_identity());
        CHECK(is_isometry(qs, sw * sc));

        // z -> -z preserves z^2.
        Mat neg = Mat::identity(r, qs.dim());
        neg.at(qs.zi(), qs.zi()) = c(r, -1);
        CHECK(is_isometry(qs, neg));

        // Shearing x_1 into z is not an isometry.
        Mat bad = Mat::identity(r, qs.dim());
        bad.at(qs.zi(), qs.xi(0)) = c(r, 1);
        CHECK_FALSE(is_isometry(qs, bad));

        // Isometries preserve the form on random vectors.
        for (int trial = 0; trial < 10; ++trial) {
            Vec v = random_vec(r, qs.dim(), rng);
            CHECK(quadratic_form(qs, sc * v) == quadratic_form(qs, v));
            CHECK(quadratic_form(qs, sw * v) == quadratic_form(qs, v));
        }
    }
}

TEST_CASE("ring moves on matrices and vectors") {
    RingPtr small = plain();
    RingPtr big = charts();
    QuadSpace qs{1};

    Mat m = Mat::identity(small, qs.dim());
    m.at(0, 0) = RingElement::variable(small, "x");
    Mat lifted = lift(m, big);
    CHECK(lifted.ring() == big);
    CHECK(lifted.at(0, 0) == RingElement::variable(big, "x"));

    Mat back = restrict_to(lifted, small);
    CHECK(back == m);

    // An honest denominator blocks restriction.
    Mat frac = Mat::identity(big, qs.dim());
    frac.at(0, 0) = RingElement::from(big, Polynomial::constant(1, Rational(1)), {1, 0});
    CHECK_THROWS_AS(restrict_to(frac, small), std::invalid_argument);

    // Substitution x -> 0 entrywise.
    RingPtr rxy = make_ring({"x", "T"}, {});
    Mat mt = Mat::identity(rxy, 3);
    mt.at(0, 1) = RingElement::from_polynomial(
        rxy, Polynomial::parse("x*T", rxy->variables));
    Substitution atzero = Substitution::evaluate(rxy, "T", Polynomial::constant(2, Rational(0)));
    Mat m0 = apply(atzero, mt);
    CHECK(m0.is_identity());

    Vec v = {RingElement::from_polynomial(rxy, Polynomial::parse("T + 1", rxy->variables))};
    // Qualified: unqualified apply on a std::vector would drag std::apply in.
    Vec v0 = eoq::apply(atzero, v);
    CHECK(v0[0] == RingElement::constant(v0[0].ring(), Rational(1)));
    CHECK(vec_eq(v0, {RingElement::constant(v0[0].ring(), Rational(1))}));
    CHECK_FALSE(vec_eq(v0, {RingElement::constant(v0[0].ring(), Rational(2))}));
}

TEST_CASE("parameter isometry") {
    RingPtr rt = make_ring({"x", "T"}, {});
    QuadSpace qs{1};

    // x1 -> x1 + T*(2z - T*y1), z -> z - T*y1 style column operations form a
    // parameter family; at T=0 it is the identity.
    Mat m = Mat::identity(rt, qs.dim());
    auto P = [&](const std::string& s) {
        return RingElement::from_polynomial(rt, Polynomial::parse(s, rt->variables));
    };
    m.at(qs.xi(0), qs.yi(0)) = P("-T^2");
    m.at(qs.xi(0), qs.zi()) = P("2*T");
    m.at(qs.zi(), qs.yi(0)) = P("-T");
    CHECK(is_isometry(qs, m));
    CHECK(is_parameter_isometry(qs, m, "T"));

    // Constant non-identity isometry: not a parameter family in T.
    Mat sw = swap_all_pairs(qs, rt);
    CHECK(is_isometry(qs, sw));
    CHECK_FALSE(is_parameter_isometry(qs, sw, "T"));
}
