#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "eoq/document.hpp"
#include "eoq/errors.hpp"

#include <random>

using namespace eoq;

namespace {

Polynomial P(const std::string& text, const RingPtr& r) {
    return Polynomial::parse(text, r->variables);
}

RingPtr sample_ring(std::size_t which) {
    switch (which % 5) {
    case 0: return make_ring({}, {});
    case 1: return make_ring({"x"}, {});
    case 2: {
        std::vector<std::string> v = {"x"};
        return make_ring(v, {Polynomial::parse("x", v)});
    }
    case 3: {
        std::vector<std::string> v = {"x"};
        return make_ring(v, {Polynomial::parse("x", v), Polynomial::parse("1 - x", v)});
    }
    default: {
        std::vector<std::string> v = {"x", "y"};
        return make_ring(v, {Polynomial::parse("x + y", v)});
    }
    }
}

void check_round_trip(const Document& d) {
    std::string s1 = serialize_document(d);
    Document back = parse_document(s1);
    CHECK(serialize_document(back) == s1);
    CHECK(back.kind == d.kind);
    CHECK(back.n == d.n);
    CHECK(same_ring(back.ring, d.ring));
}

} // namespace

TEST_CASE("round trips across payload kinds, randomized (200 documents)") {
    std::mt19937_64 rng(2024);

    for (std::size_t i = 0; i < 200; ++i) {
        RingPtr ring = sample_ring(i);
        QuadSpace qs(2 + i % 2);
        GeneratorWord w = random_word(qs, ring, rng, i % 5);
        switch (i % 3) {
        case 0: {
            Document d = word_document(qs.n, ring, w);
            d.meta["index"] = std::to_string(i);
            check_round_trip(d);
            Document back = parse_document(serialize_document(d));
            CHECK(evaluate_word(qs, ring, back.word) == evaluate_word(qs, ring, w));
            break;
        }
        case 1: {
            Document d = matrix_document(qs.n, evaluate_word(qs, ring, w));
            check_round_trip(d);
            CHECK(parse_document(serialize_document(d)).matrix == d.matrix);
            break;
        }
        default: {
            QuadricPoint pt = act(qs, w, base_point(qs, ring, Variant::QPrime));
            Document d = point_document(qs.n, pt);
            check_round_trip(d);
            CHECK(point_eq(parse_document(serialize_document(d)).point, pt));
            break;
        }
        }
    }
}

TEST_CASE("round trips for chains, instances, elements, certificates") {
    QuadSpace qs(2);
    RingPtr A = make_ring({"x"}, {});
    RingPtr AT = with_variable(A, "T");
    MonicInstance inst = plant_instance(5, qs, A, P("T + 1", AT), 2);

    Document di = instance_document(2, inst);
    check_round_trip(di);

    MonicInstance carrying = inst;
    carrying.bundle.recursive_bundle = std::make_shared<MonicInstance>(inst);
    check_round_trip(instance_document(2, carrying));

    Document dc = chain_document(2, monic_inversion_transform(qs, inst));
    check_round_trip(dc);

    MonicInstance tpow = plant_instance(6, qs, A, P("T", AT), 2);
    check_round_trip(chain_document(2, base_case_T(qs, tpow)));

    RingPtr chartx = sample_ring(2);
    Vec elems = {RingElement::from(chartx, P("x^3 + x", chartx), {2}),
                 RingElement::from_polynomial(chartx, P("1 - x", chartx))};
    Document dp = polynomial_document(chartx, elems);
    check_round_trip(dp);

    RingPtr plain = sample_ring(1);
    Document dcert = polynomial_document(plain, {RingElement::one(plain)});
    dcert.certificate = bezout_certificate(P("x", plain), P("1 - x", plain), 2);
    check_round_trip(dcert);
    Document certback = parse_document(serialize_document(dcert));
    REQUIRE(certback.certificate.has_value());
    CHECK(verify_comaximal(*certback.certificate));

    // Several documents travel in one file.
    std::vector<Document> pack = {di, dc, dp};
    std::vector<Document> unpacked = parse_documents(serialize_documents(pack));
    REQUIRE(unpacked.size() == 3);
    CHECK(serialize_document(unpacked[1]) == serialize_document(dc));
    CHECK_THROWS_AS(parse_document(serialize_documents(pack)), ParseError);
}

TEST_CASE("malformed inputs are parse errors") {
    QuadSpace qs(2);
    RingPtr A = make_ring({"x"}, {});
    GeneratorWord w = {{Generator::t3(0, 1, RingElement::variable(A, "x")), 1}};
    std::string good = serialize_document(word_document(2, A, w));

    auto corrupt = [&](const std::string& from, const std::string& to) {
        std::string s = good;
        auto pos = s.find(from);
        REQUIRE(pos != std::string::npos);
        s.replace(pos, from.size(), to);
        return s;
    };

    CHECK_THROWS_AS(parse_document("{"), ParseError);
    CHECK_THROWS_AS(parse_document("[1, 2]"), ParseError);
    CHECK_THROWS_AS(parse_document(corrupt("eoq-doc/1", "eoq-doc/9")), ParseError);
    CHECK_THROWS_AS(parse_document(corrupt("\"kind\": \"word\"", "\"kind\": \"poem\"")),
                    ParseError);
    CHECK_THROWS_AS(parse_document(corrupt("\"kind\": \"T3\"", "\"kind\": \"T9\"")),
                    ParseError);
    // Factory invariants hold on parse: T3 needs distinct indices.
    CHECK_THROWS_AS(parse_document(corrupt("\"j\": 1", "\"j\": 0")), ParseError);
    // Exponents other than +/-1 are rejected.
    CHECK_THROWS_AS(
        parse_document(corrupt("\"param\": \"x\"", "\"param\": \"x\", \"exp\": 2")),
        ParseError);
    // Unparseable coefficient text.
    CHECK_THROWS_AS(parse_document(corrupt("\"param\": \"x\"", "\"param\": \"x +\"")),
                    ParseError);

    // Orthogonality of commutator-tag vectors is enforced.
    std::string cab = R"({"format": "eoq-doc/1", "kind": "word", "n": 2,
        "ring": {"variables": [], "inverted": []},
        "payload": {"ring": {"variables": [], "inverted": []},
                    "letters": [{"kind": "CAB", "u": ["1", "0"], "v": ["1", "0"]}]},
        "meta": {}})";
    CHECK_THROWS_AS(parse_document(cab), ParseError);

    // Ring descriptor rules apply (the parameter name must sit last).
    std::string tfirst = R"({"format": "eoq-doc/1", "kind": "point", "n": 1,
        "ring": {"variables": ["T", "x"], "inverted": []},
        "payload": {"ring": {"variables": ["T", "x"], "inverted": []},
                    "variant": "Q1", "p": ["0"], "f": ["0"], "last": "1"},
        "meta": {}})";
    CHECK_THROWS_AS(parse_document(tfirst), ParseError);

    // Mismatched p/f block lengths.
    std::string plen = R"({"format": "eoq-doc/1", "kind": "point", "n": 1,
        "ring": {"variables": [], "inverted": []},
        "payload": {"ring": {"variables": [], "inverted": []},
                    "variant": "Q1", "p": ["0", "0"], "f": ["0"], "last": "1"},
        "meta": {}})";
    CHECK_THROWS_AS(parse_document(plen), ParseError);

    // Denominator lists must match the ring's generator count.
    std::string dlen = R"({"format": "eoq-doc/1", "kind": "polynomial", "n": 0,
        "ring": {"variables": ["x"], "inverted": ["x"]},
        "payload": [{"num": "x", "den": [1, 1]}],
        "meta": {}})";
    CHECK_THROWS_AS(parse_document(dlen), ParseError);
}

TEST_CASE("payload-appropriate verification") {
    QuadSpace qs(2);
    RingPtr Q = make_ring({}, {});

    SUBCASE("matrices: exact form check, first bad entry named") {
        Document good = matrix_document(2, Mat::identity(Q, qs.dim()));
        CHECK_NOTHROW(verify_document(good));

        Document bad = good;
        bad.matrix.at(0, 1) = RingElement::one(Q);
        try {
            verify_document(bad);
            FAIL("expected a verification failure");
        } catch (const VerifyError& e) {
            CHECK(std::string(e.what()).find("entry") != std::string::npos);
        }
    }

    SUBCASE("matrices over a parameter ring must start at the identity") {
        RingPtr A = make_ring({"x"}, {});
        RingPtr AT = with_variable(A, "T");
        std::mt19937_64 rng(9);
        GeneratorWord w = random_word(qs, A, rng, 2);
        GeneratorWord family = homotopize(qs, w, "T");
        Document good = matrix_document(2, evaluate_word(qs, AT, family));
        CHECK_NOTHROW(verify_document(good));

        Vec u = {RingElement::one(AT), RingElement::zero(AT)};
        Document constant = matrix_document(2, generator_matrix(qs, Generator::eb(u)));
        CHECK_THROWS_AS(verify_document(constant), VerifyError);
    }

    SUBCASE("points: membership with the defect reported") {
        QuadricPoint base = base_point(qs, Q, Variant::QPrime);
        CHECK_NOTHROW(verify_document(point_document(2, base)));
        QuadricPoint off = base;
        off.f[0] = RingElement::one(Q);
        off.p[0] = RingElement::one(Q);
        try {
            verify_document(point_document(2, off));
            FAIL("expected a verification failure");
        } catch (const VerifyError& e) {
            CHECK(std::string(e.what()).find("defect") != std::string::npos);
        }
    }

    SUBCASE("words, chains, instances dispatch to their own checks") {
        RingPtr A = make_ring({"x"}, {});
        RingPtr AT = with_variable(A, "T");
        std::mt19937_64 rng(10);
        GeneratorWord w = random_word(qs, A, rng, 3);
        CHECK_NOTHROW(verify_document(word_document(2, A, w)));

        MonicInstance inst = plant_instance(5, qs, A, P("T + 1", AT), 2);
        CHECK_NOTHROW(verify_document(instance_document(2, inst)));
        Document chain = chain_document(2, monic_inversion_transform(qs, inst));
        CHECK_NOTHROW(verify_document(chain));

        // One perturbed coefficient somewhere in the middle of the chain.
        Document tampered =
            parse_document(serialize_document(chain)); // fresh copy
        REQUIRE(tampered.chain.links.size() == 5);
        tampered.chain.links[2].to.f[0] =
            tampered.chain.links[2].to.f[0] + RingElement::one(tampered.chain.links[2].to.ring());
        CHECK_THROWS_AS(verify_document(tampered), VerifyError);

        Document badinst = instance_document(2, inst);
        badinst.instance->g = P("2*T", AT);
        CHECK_THROWS_AS(verify_document(badinst), WitnessError);
    }

    SUBCASE("certificate riders are checked") {
        RingPtr A = make_ring({"x"}, {});
        Document d = polynomial_document(A, {RingElement::one(A)});
        d.certificate = bezout_certificate(P("x", A), P("1 - x", A), 1);
        CHECK_NOTHROW(verify_document(d));
        d.certificate->r = P("x", A);
        CHECK_THROWS_AS(verify_document(d), VerifyError);
    }
}
