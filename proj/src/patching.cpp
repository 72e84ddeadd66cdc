#include "eoq/patching.hpp"

#include "eoq/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace eoq {

namespace {

Polynomial remap_by_name(const Polynomial& p, const RingPtr& src, const RingPtr& dst) {
    std::vector<std::size_t> map(src->nvars());
    for (std::size_t i = 0; i < src->nvars(); ++i) {
        auto j = dst->index_of(src->variables[i]);
        if (!j && p.involves(i))
            throw std::invalid_argument("variable " + src->variables[i] +
                                        " has no home in the target ring");
        map[i] = j.value_or(0);
    }
    return p.remap(dst->nvars(), map);
}

RingPtr ring_without(const RingPtr& ring, std::size_t gen) {
    std::vector<Polynomial> kept;
    for (std::size_t i = 0; i < ring->inverted.size(); ++i)
        if (i != gen)
            kept.push_back(ring->inverted[i]);
    return make_ring(ring->variables, std::move(kept));
}

std::size_t require_generator(const RingPtr& ring, const Polynomial& g, const char* what) {
    auto idx = ring->generator_index(g);
    if (!idx)
        throw std::invalid_argument(std::string(what) + " is not inverted in this ring");
    return *idx;
}

// The single variable both polynomials live in, if there is one; nullopt
// when either involves two or more variables. Constants report no variable.
std::optional<std::size_t> common_single_variable(const Polynomial& a, const Polynomial& b) {
    std::optional<std::size_t> var;
    for (const Polynomial* p : {&a, &b})
        for (std::size_t i = 0; i < a.nvars(); ++i)
            if (p->involves(i)) {
                if (var && *var != i)
                    return std::nullopt;
                var = i;
            }
    return var.value_or(0); // constants: any slot works
}

Polynomial from_dense(std::size_t nvars, std::size_t var, const std::vector<Rational>& c) {
    Polynomial p(nvars);
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] == 0)
            continue;
        Exponents e(nvars, 0);
        e[var] = static_cast<int>(k);
        p += Polynomial::monomial(nvars, e, c[k]);
    }
    return p;
}

void dense_trim(std::vector<Rational>& v) {
    while (!v.empty() && v.back() == 0)
        v.pop_back();
}

// quotient, remainder of dense univariate division.
std::pair<std::vector<Rational>, std::vector<Rational>>
dense_divmod(std::vector<Rational> num, const std::vector<Rational>& den) {
    std::vector<Rational> quo(num.size() >= den.size() ? num.size() - den.size() + 1 : 0,
                              Rational(0));
    while (num.size() >= den.size() && !num.empty()) {
        Rational c = num.back() / den.back();
        std::size_t shift = num.size() - den.size();
        quo[shift] = c;
        for (std::size_t i = 0; i < den.size(); ++i)
            num[shift + i] -= c * den[i];
        num.pop_back(); // leading term cancels exactly
        dense_trim(num);
        if (num.empty())
            break;
    }
    dense_trim(quo);
    return {std::move(quo), std::move(num)};
}

std::vector<Rational> dense_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    if (a.empty() || b.empty())
        return {};
    std::vector<Rational> c(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] += a[i] * b[j];
    dense_trim(c);
    return c;
}

std::vector<Rational> dense_sub(std::vector<Rational> a, const std::vector<Rational>& b) {
    if (a.size() < b.size())
        a.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] -= b[i];
    dense_trim(a);
    return a;
}

std::vector<Rational> dense_add(std::vector<Rational> a, const std::vector<Rational>& b) {
    if (a.size() < b.size())
        a.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] += b[i];
    dense_trim(a);
    return a;
}

/**
 * Extended Euclid on univariate a, b: returns (s, r) with a*s + b*r = 1 and
 * deg s < deg b, or nullopt when gcd(a, b) is not a nonzero constant.
 */
std::optional<std::pair<Polynomial, Polynomial>>
euclid_pair(const Polynomial& a, const Polynomial& b) {
    auto var = common_single_variable(a, b);
    if (!var)
        return std::nullopt;
    auto da = a.dense_univariate(*var);
    auto db = b.dense_univariate(*var);
    if (!da || !db || da->empty() || db->empty())
        return std::nullopt;

    std::vector<Rational> r0 = *da, r1 = *db;
    std::vector<Rational> s0 = {Rational(1)}, s1 = {};
    std::vector<Rational> t0 = {}, t1 = {Rational(1)};
    while (!r1.empty()) {
        auto [q, rem] = dense_divmod(r0, r1);
        r0 = r1;
        r1 = std::move(rem);
        auto snext = dense_sub(s0, dense_mul(q, s1));
        s0 = s1;
        s1 = std::move(snext);
        auto tnext = dense_sub(t0, dense_mul(q, t1));
        t0 = t1;
        t1 = std::move(tnext);
    }
    if (r0.size() != 1) // gcd has positive degree (or everything vanished)
        return std::nullopt;
    Rational g = r0[0];
    for (auto& c : s0)
        c /= g;
    for (auto& c : t0)
        c /= g;
    // Keep s small: s -> s - q*b with deg < deg b, compensated by r -> r + q*a.
    auto [q, srem] = dense_divmod(s0, *db);
    s0 = std::move(srem);
    t0 = dense_add(std::move(t0), dense_mul(q, *da));
    std::size_t nv = a.nvars();
    Polynomial sp = from_dense(nv, *var, s0);
    Polynomial rp = from_dense(nv, *var, t0);
    return std::make_pair(sp, rp);
}

Rational binomial(int n, int k) {
    Rational c(1);
    for (int i = 1; i <= k; ++i)
        c *= Rational(n - i + 1) / Rational(i);
    return c;
}

Substitution scale_t(const RingPtr& ring, const std::string& tvar, const Polynomial& factor) {
    return Substitution::scale(ring, tvar, factor);
}

} // namespace

bool verify_comaximal(const ComaximalCertificate& c) {
    if (c.ma < 0 || c.mb < 0)
        return false;
    Polynomial lhs = c.a.pow(c.ma) * c.s + c.b.pow(c.mb) * c.r;
    return lhs.is_one();
}

ComaximalCertificate bezout_certificate(const Polynomial& a, const Polynomial& b, int m) {
    if (m < 1)
        throw std::invalid_argument("certificate exponent must be positive");
    if (a.nvars() != b.nvars())
        throw std::invalid_argument("mismatched variable counts");
    if (a.is_zero() || b.is_zero())
        throw VerifyError("zero is comaximal with nothing but units");

    Polynomial one = Polynomial::constant(a.nvars(), Rational(1));
    Polynomial s0, r0;
    bool found = false;

    if (a.is_constant()) {
        s0 = Polynomial::constant(a.nvars(), Rational(1) / a.constant_value());
        r0 = Polynomial(a.nvars());
        found = true;
    } else if (b.is_constant()) {
        s0 = Polynomial(a.nvars());
        r0 = Polynomial::constant(a.nvars(), Rational(1) / b.constant_value());
        found = true;
    }
    if (!found)
        if (auto q = exact_divide(one - b, a)) {
            s0 = *q;
            r0 = one;
            found = true;
        }
    if (!found)
        if (auto q = exact_divide(one - a, b)) {
            s0 = one;
            r0 = *q;
            found = true;
        }
    if (!found)
        if (auto pair = euclid_pair(a, b)) {
            std::tie(s0, r0) = *pair;
            found = true;
        }
    if (!found)
        throw VerifyError("no comaximality witness found for the given pair");

    ComaximalCertificate cert{a, b, m, m, s0, r0};
    if (m > 1) {
        // (a*s0 + b*r0)^(2m-1) split by which factor reaches power m.
        int n = 2 * m - 1;
        Polynomial s(a.nvars()), r(a.nvars());
        for (int i = 0; i <= n; ++i) {
            Polynomial term = Polynomial::constant(a.nvars(), binomial(n, i)) * s0.pow(i) *
                              r0.pow(n - i);
            if (i >= m)
                s += term * a.pow(i - m) * b.pow(n - i);
            else
                r += term * a.pow(i) * b.pow(m - 1 - i);
        }
        cert.s = s;
        cert.r = r;
    }
    if (!verify_comaximal(cert))
        throw VerifyError("comaximality witness failed its own identity");
    return cert;
}

Mat quillen_clear(const QuadSpace& qs, const Mat& sigma, const std::string& tvar,
                  const Polynomial& c, const Polynomial& d, const Polynomial& gen) {
    const RingPtr& ring = sigma.ring();
    auto tidx = ring->index_of(tvar);
    if (!tidx)
        throw std::invalid_argument("parameter variable " + tvar + " is not in the ring");
    if (c.involves(*tidx) || d.involves(*tidx))
        throw std::invalid_argument("scale factors must be free of the parameter");
    std::size_t gi = require_generator(ring, gen, "clearing target");

    Mat num = apply(scale_t(ring, tvar, c), sigma);
    Mat den = apply(scale_t(ring, tvar, d), sigma);
    Mat tau = num * isometry_inverse(qs, den);

    try {
        return restrict_to(tau, ring_without(ring, gi));
    } catch (const std::invalid_argument&) {
        throw VerifyError("difference quotient keeps a denominator in the cleared generator");
    }
}

std::optional<int> minimal_clearing_exponent(const QuadSpace& qs, const Mat& sigma,
                                             const std::string& tvar, const Polynomial& gen,
                                             int bound) {
    const RingPtr& ring = sigma.ring();
    if (!ring->index_of(tvar))
        throw std::invalid_argument("parameter variable " + tvar + " is not in the ring");
    std::size_t gi = require_generator(ring, gen, "clearing target");

    if (bound < 0) {
        int maxexp = 0;
        for (std::size_t i = 0; i < sigma.rows(); ++i)
            for (std::size_t j = 0; j < sigma.cols(); ++j)
                maxexp = std::max(maxexp,
                                  sigma.at(i, j).normalized().denominator_exponents()[gi]);
        bound = 2 * maxexp + 2;
    }

    // Fresh names for the symbolic congruent pair c = qd + gen^N * qe, d = qd.
    auto fresh = [&](std::string base) {
        std::string name = base;
        for (int k = 1; ring->index_of(name); ++k)
            name = base + std::to_string(k);
        return name;
    };
    std::string nd = fresh("qd"), ne = fresh("qe");
    RingPtr wide = with_variable(with_variable(ring, nd), ne);
    Mat swide = lift(sigma, wide);
    Polynomial gwide = remap_by_name(gen, ring, wide);
    Polynomial qd = Polynomial::variable(wide->nvars(), *wide->index_of(nd));
    Polynomial qe = Polynomial::variable(wide->nvars(), *wide->index_of(ne));

    for (int N = 0; N <= bound; ++N) {
        try {
            quillen_clear(qs, swide, tvar, qd + gwide.pow(N) * qe, qd, gwide);
            return N;
        } catch (const VerifyError&) {
            // keep raising the congruence power
        }
    }
    return std::nullopt;
}

SplitMatrices split_sigma_T(const QuadSpace& qs, const Mat& sigma, const std::string& tvar,
                            const Polynomial& a, const Polynomial& b, int bound) {
    const RingPtr& ring = sigma.ring();
    auto tidx = ring->index_of(tvar);
    if (!tidx)
        throw std::invalid_argument("parameter variable " + tvar + " is not in the ring");
    std::size_t ia = require_generator(ring, a, "first chart generator");
    std::size_t ib = require_generator(ring, b, "second chart generator");
    if (ia == ib)
        throw std::invalid_argument("chart generators must differ");
    if (a.involves(*tidx) || b.involves(*tidx))
        throw std::invalid_argument("chart generators must be free of the parameter");

    Substitution at0 =
        Substitution::evaluate(ring, tvar, Polynomial::constant(ring->nvars(), Rational(0)));
    if (!apply(at0, sigma).is_identity())
        throw std::invalid_argument("the family must start at the identity");

    // Search the working exponent by attempting the factorization outright:
    // at power m the scaled factor differs from sigma's argument by a^m * s * T
    // and its complement by b^m * r * T, so success is monotone in m and the
    // first attempt whose restrictions go through is sound.  Each attempt is
    // plain arithmetic over the given ring, with no symbolic probe variables.
    int maxexp = 0;
    for (std::size_t i = 0; i < sigma.rows(); ++i)
        for (std::size_t j = 0; j < sigma.cols(); ++j) {
            auto exps = sigma.at(i, j).normalized().denominator_exponents();
            maxexp = std::max({maxexp, exps[ia], exps[ib]});
        }
    const int limit = bound >= 0 ? bound : 2 * maxexp + 2;
    RingPtr ring_minus_a = ring_without(ring, ia);
    RingPtr ring_minus_b = ring_without(ring, ib);

    std::optional<SplitMatrices> out;
    for (int m = std::max(1, maxexp); m <= limit && !out; ++m) {
        ComaximalCertificate cert = bezout_certificate(a, b, m);
        Mat beta_full = apply(scale_t(ring, tvar, a.pow(m) * cert.s), sigma);
        Mat beta_r, alpha_r;
        try {
            beta_r = restrict_to(beta_full, ring_minus_a);
            alpha_r = restrict_to(sigma * isometry_inverse(qs, beta_full), ring_minus_b);
        } catch (const std::invalid_argument&) {
            continue;
        }
        if (lift(alpha_r, ring) * lift(beta_r, ring) != sigma)
            continue;
        out = SplitMatrices{std::move(alpha_r), std::move(beta_r), std::move(cert)};
    }
    if (!out)
        throw BoundError("no clearing exponent within bound for the chart factorization");
    Substitution a0 = Substitution::evaluate(out->alpha.ring(), tvar,
                                             Polynomial::constant(ring->nvars(), Rational(0)));
    Substitution b0 = Substitution::evaluate(out->beta.ring(), tvar,
                                             Polynomial::constant(ring->nvars(), Rational(0)));
    if (!apply(a0, out->alpha).is_identity() || !apply(b0, out->beta).is_identity())
        throw VerifyError("chart factors do not start at the identity");
    return std::move(*out);
}

SplitResult split_sigma(const QuadSpace& qs, const RingPtr& ring, const GeneratorWord& w,
                        const Polynomial& a, const Polynomial& b, int bound) {
    std::size_t ia = require_generator(ring, a, "first chart generator");
    std::size_t ib = require_generator(ring, b, "second chart generator");
    if (ia == ib)
        throw std::invalid_argument("chart generators must differ");

    // Work on the freely reduced word: the matrix is the same but every
    // later cost is proportional to the essential letter count.
    GeneratorWord red = free_reduce(expand_commutator_tags(w));
    Mat target = evaluate_word(qs, ring, red);

    // Scaling every letter parameter by a^m * s evaluates the word's
    // one-parameter contraction at a^m * s = 1 - b^m * r.  Each letter
    // clears its own a-denominators once m reaches the letter floor, so
    // beta lands in the b-chart letter by letter; alpha is the exact
    // quotient against the target matrix and differs from the identity
    // by a multiple of b^m * r, so its a-chart membership is monotone in
    // m and checked by plain restriction.  The quotient multiplies back
    // by construction.
    int floor_m = 1, maxexp = 0;
    for (const auto& l : red) {
        auto see = [&](const RingElement& e) {
            floor_m = std::max(floor_m, e.normalized().denominator_exponents()[ia]);
        };
        if (l.gen.is_transvection()) {
            see(l.gen.param);
        } else {
            for (const auto& e : l.gen.u)
                see(e);
            for (const auto& e : l.gen.v)
                see(e);
        }
    }
    for (std::size_t i = 0; i < target.rows(); ++i)
        for (std::size_t j = 0; j < target.cols(); ++j) {
            auto exps = target.at(i, j).normalized().denominator_exponents();
            maxexp = std::max({maxexp, exps[ia], exps[ib]});
        }

    const int limit = bound >= 0 ? bound : 4 * std::max(maxexp, floor_m) + 8;
    RingPtr ring_minus_a = ring_without(ring, ia);
    RingPtr ring_minus_b = ring_without(ring, ib);

    int m = std::max(floor_m, maxexp);
    while (m <= limit) {
        ComaximalCertificate cert = bezout_certificate(a, b, m);
        RingElement c = RingElement::from_polynomial(ring, a.pow(m) * cert.s);
        GeneratorWord bw = scale_word_params(red, c);
        Mat beta = evaluate_word(qs, ring, bw);
        Mat alpha = target * evaluate_word(qs, ring, inverse_word(bw));

        // Surviving denominator powers tell how far the power is from
        // clearing, so jump by the worst residual instead of stepping.
        int residual = 0;
        for (std::size_t i = 0; i < alpha.rows(); ++i)
            for (std::size_t j = 0; j < alpha.cols(); ++j) {
                auto ae = alpha.at(i, j).normalized().denominator_exponents();
                auto be = beta.at(i, j).normalized().denominator_exponents();
                residual = std::max({residual, ae[ib], be[ia]});
            }
        if (residual == 0)
            return SplitResult{restrict_to(alpha, ring_minus_b),
                               restrict_to(beta, ring_minus_a), std::move(cert)};
        m += residual;
    }
    throw BoundError("no clearing exponent within bound for the chart factorization");
}

Polynomial patch_element(const RingElement& ea, const RingElement& eb,
                         const ComaximalCertificate& cert) {
    if (!verify_comaximal(cert))
        throw VerifyError("invalid comaximality witness");

    RingElement na = ea.normalized();
    RingElement nb = eb.normalized();
    const RingPtr& ra = na.ring();
    const RingPtr& rb = nb.ring();
    if (ra->variables != rb->variables)
        throw std::invalid_argument("sections live over different variable lists");

    auto literal = [](const RingElement& e, const RingPtr& r, const Polynomial& gen,
                      const char* side) {
        auto gi = r->generator_index(gen);
        if (!gi)
            throw std::invalid_argument(std::string(side) +
                                        " section's chart generator is not inverted");
        for (std::size_t k = 0; k < e.denominator_exponents().size(); ++k)
            if (k != *gi && e.denominator_exponents()[k] != 0)
                throw std::invalid_argument(std::string(side) +
                                            " section has a denominator outside its chart");
        return e.denominator_exponents()[*gi];
    };
    int m1 = literal(na, ra, cert.a, "first");
    int k1 = literal(nb, rb, cert.b, "second");
    if (cert.ma < m1 || cert.mb < k1)
        throw std::invalid_argument("certificate exponents too small for these sections");

    const Polynomial& p = na.numerator();
    const Polynomial& q = nb.numerator();
    if (p * cert.b.pow(k1) != q * cert.a.pow(m1))
        throw VerifyError("sections do not agree on the overlap");

    return cert.s * cert.a.pow(cert.ma - m1) * p + cert.r * cert.b.pow(cert.mb - k1) * q;
}

Vec patch_vector(const Vec& va, const Vec& vb, const ComaximalCertificate& cert,
                 const RingPtr& target) {
    if (va.size() != vb.size())
        throw std::invalid_argument("section vectors have different lengths");
    Vec out;
    out.reserve(va.size());
    for (std::size_t i = 0; i < va.size(); ++i) {
        Polynomial e = patch_element(va[i], vb[i], cert);
        out.push_back(RingElement::from_polynomial(
            target, remap_by_name(e, va[i].ring(), target)));
    }
    return out;
}

} // namespace eoq
