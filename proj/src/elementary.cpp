#include "eoq/elementary.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace eoq {

namespace {

void require_vec(const Vec& u, const char* what) {
    if (u.empty())
        throw std::invalid_argument(std::string(what) + ": empty parameter vector");
    for (const auto& e : u) {
        if (!e.valid())
            throw std::invalid_argument(std::string(what) + ": invalid entry");
        if (!same_ring(e.ring(), u[0].ring()))
            throw std::invalid_argument(std::string(what) + ": mixed rings in one vector");
    }
}

RingElement dot(const Vec& a, const Vec& b) {
    RingElement s = RingElement::zero(a[0].ring());
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

} // namespace

Generator Generator::t1(std::size_t i, RingElement lambda) {
    Generator g;
    g.kind = GenKind::T1;
    g.i = i;
    g.param = std::move(lambda);
    return g;
}

Generator Generator::t2(std::size_t i, RingElement lambda) {
    Generator g = t1(i, std::move(lambda));
    g.kind = GenKind::T2;
    return g;
}

Generator Generator::t3(std::size_t i, std::size_t j, RingElement lambda) {
    if (i == j)
        throw std::invalid_argument("paired transvection needs distinct indices");
    Generator g;
    g.kind = GenKind::T3;
    g.i = i;
    g.j = j;
    g.param = std::move(lambda);
    return g;
}

Generator Generator::t4(std::size_t i, std::size_t j, RingElement lambda) {
    Generator g = t3(i, j, std::move(lambda));
    g.kind = GenKind::T4;
    return g;
}

Generator Generator::t5(std::size_t i, std::size_t j, RingElement lambda) {
    Generator g = t3(i, j, std::move(lambda));
    g.kind = GenKind::T5;
    return g;
}

Generator Generator::ea(Vec u) {
    require_vec(u, "EA");
    Generator g;
    g.kind = GenKind::EA;
    g.u = std::move(u);
    return g;
}

Generator Generator::eb(Vec u) {
    require_vec(u, "EB");
    Generator g;
    g.kind = GenKind::EB;
    g.u = std::move(u);
    return g;
}

Generator Generator::cab(Vec u, Vec v) {
    require_vec(u, "CAB");
    require_vec(v, "CAB");
    if (u.size() != v.size())
        throw std::invalid_argument("CAB: vector length mismatch");
    if (!dot(u, v).is_zero())
        throw std::invalid_argument("CAB requires orthogonal parameter vectors");
    Generator g;
    g.kind = GenKind::CAB;
    g.u = std::move(u);
    g.v = std::move(v);
    return g;
}

Generator Generator::caa(Vec u, Vec v) {
    require_vec(u, "CAA");
    require_vec(v, "CAA");
    if (u.size() != v.size())
        throw std::invalid_argument("CAA: vector length mismatch");
    Generator g;
    g.kind = GenKind::CAA;
    g.u = std::move(u);
    g.v = std::move(v);
    return g;
}

Generator Generator::cbb(Vec u, Vec v) {
    Generator g = caa(std::move(u), std::move(v));
    g.kind = GenKind::CBB;
    return g;
}

const RingPtr& Generator::ring() const {
    if (is_transvection())
        return param.ring();
    return u[0].ring();
}

bool Generator::is_transvection() const {
    switch (kind) {
    case GenKind::T1:
    case GenKind::T2:
    case GenKind::T3:
    case GenKind::T4:
    case GenKind::T5:
        return true;
    default:
        return false;
    }
}

bool Generator::is_commutator_tag() const {
    return kind == GenKind::CAB || kind == GenKind::CAA || kind == GenKind::CBB;
}

std::string Generator::str(const QuadSpace&) const {
    static const char* names[] = {"T1", "T2", "T3", "T4", "T5", "EA", "EB", "CAB", "CAA", "CBB"};
    std::ostringstream os;
    os << names[static_cast<int>(kind)];
    if (is_transvection()) {
        os << "[" << i + 1;
        if (kind == GenKind::T3 || kind == GenKind::T4 || kind == GenKind::T5)
            os << "," << j + 1;
        os << "](" << param.str() << ")";
        return os.str();
    }
    auto vec = [&](const Vec& w) {
        std::string s = "(";
        for (std::size_t k = 0; k < w.size(); ++k) {
            if (k)
                s += ", ";
            s += w[k].str();
        }
        return s + ")";
    };
    os << vec(u);
    if (is_commutator_tag())
        os << vec(v);
    return os.str();
}

namespace {

// Inverse of a generator is the same type with flipped parameters:
// lambda -> -lambda, u -> -u for vector types, v -> -v for commutators.
Generator flipped(const Generator& g) {
    Generator r = g;
    switch (g.kind) {
    case GenKind::T1:
    case GenKind::T2:
    case GenKind::T3:
    case GenKind::T4:
    case GenKind::T5:
        r.param = -g.param;
        break;
    case GenKind::EA:
    case GenKind::EB:
        for (auto& e : r.u)
            e = -e;
        break;
    case GenKind::CAB:
    case GenKind::CAA:
    case GenKind::CBB:
        for (auto& e : r.v)
            e = -e;
        break;
    }
    return r;
}

void check_indices(const QuadSpace& qs, const Generator& g) {
    if (g.is_transvection()) {
        if (g.i >= qs.n || ((g.kind != GenKind::T1 && g.kind != GenKind::T2) && g.j >= qs.n))
            throw std::invalid_argument("generator index out of range for this space");
    } else if (g.u.size() != qs.n || (g.is_commutator_tag() && g.v.size() != qs.n)) {
        throw std::invalid_argument("generator vector length does not match the space");
    }
}

} // namespace

Mat generator_matrix(const QuadSpace& qs, const Generator& g) {
    check_indices(qs, g);
    const RingPtr& ring = g.ring();
    Mat m = Mat::identity(ring, qs.dim());
    const Rational two(2);
    switch (g.kind) {
    case GenKind::T1:
        m.at(qs.xi(g.i), qs.yi(g.i)) = -(g.param * g.param);
        m.at(qs.xi(g.i), qs.zi()) = g.param * two;
        m.at(qs.zi(), qs.yi(g.i)) = -g.param;
        break;
    case GenKind::T2:
        m.at(qs.yi(g.i), qs.xi(g.i)) = -(g.param * g.param);
        m.at(qs.yi(g.i), qs.zi()) = g.param * two;
        m.at(qs.zi(), qs.xi(g.i)) = -g.param;
        break;
    case GenKind::T3:
        m.at(qs.xi(g.i), qs.xi(g.j)) += g.param;
        m.at(qs.yi(g.j), qs.yi(g.i)) -= g.param;
        break;
    case GenKind::T4:
        m.at(qs.xi(g.i), qs.yi(g.j)) += g.param;
        m.at(qs.xi(g.j), qs.yi(g.i)) -= g.param;
        break;
    case GenKind::T5:
        m.at(qs.yi(g.i), qs.xi(g.j)) += g.param;
        m.at(qs.yi(g.j), qs.xi(g.i)) -= g.param;
        break;
    case GenKind::EA:
        for (std::size_t a = 0; a < qs.n; ++a) {
            for (std::size_t b = 0; b < qs.n; ++b)
                m.at(qs.xi(a), qs.yi(b)) -= g.u[a] * g.u[b];
            m.at(qs.xi(a), qs.zi()) = g.u[a] * two;
            m.at(qs.zi(), qs.yi(a)) = -g.u[a];
        }
        break;
    case GenKind::EB:
        for (std::size_t a = 0; a < qs.n; ++a) {
            for (std::size_t b = 0; b < qs.n; ++b)
                m.at(qs.yi(a), qs.xi(b)) -= g.u[a] * g.u[b];
            m.at(qs.yi(a), qs.zi()) = g.u[a] * two;
            m.at(qs.zi(), qs.xi(a)) = -g.u[a];
        }
        break;
    case GenKind::CAB:
        for (std::size_t a = 0; a < qs.n; ++a)
            for (std::size_t b = 0; b < qs.n; ++b) {
                m.at(qs.xi(a), qs.xi(b)) += (g.u[a] * g.v[b]) * two;
                m.at(qs.yi(a), qs.yi(b)) -= (g.v[a] * g.u[b]) * two;
            }
        break;
    case GenKind::CAA:
        for (std::size_t a = 0; a < qs.n; ++a)
            for (std::size_t b = 0; b < qs.n; ++b)
                m.at(qs.xi(a), qs.yi(b)) +=
                    (g.u[a] * g.v[b]) * two - (g.v[a] * g.u[b]) * two;
        break;
    case GenKind::CBB:
        for (std::size_t a = 0; a < qs.n; ++a)
            for (std::size_t b = 0; b < qs.n; ++b)
                m.at(qs.yi(a), qs.xi(b)) +=
                    (g.u[a] * g.v[b]) * two - (g.v[a] * g.u[b]) * two;
        break;
    }
    return m;
}

Mat letter_matrix(const QuadSpace& qs, const Letter& l) {
    if (l.exp != 1 && l.exp != -1)
        throw std::invalid_argument("letter exponent must be +1 or -1");
    return generator_matrix(qs, l.exp == 1 ? l.gen : flipped(l.gen));
}

Mat evaluate_word(const QuadSpace& qs, const RingPtr& ring, const GeneratorWord& w) {
    Mat m = Mat::identity(ring, qs.dim());
    for (const auto& l : w) {
        if (!same_ring(l.gen.ring(), ring))
            throw std::invalid_argument("word letter lives in a different ring");
        m = m * letter_matrix(qs, l);
    }
    return m;
}

Vec act_word(const QuadSpace& qs, const GeneratorWord& w, const Vec& v) {
    Vec r = v;
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        r = letter_matrix(qs, *it) * r;
    return r;
}

GeneratorWord inverse_word(const GeneratorWord& w) {
    GeneratorWord r(w.rbegin(), w.rend());
    for (auto& l : r)
        l.exp = -l.exp;
    return r;
}

GeneratorWord concat(const GeneratorWord& a, const GeneratorWord& b) {
    GeneratorWord r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

namespace {

template <typename F> Generator map_params(const Generator& g, F&& f) {
    Generator r = g;
    if (g.is_transvection()) {
        r.param = f(g.param);
        return r;
    }
    for (auto& e : r.u)
        e = f(e);
    for (auto& e : r.v)
        e = f(e);
    return r;
}

} // namespace

namespace {

bool same_vec(const Vec& a, const Vec& b) {
    if (a.size() != b.size())
        return false;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (!(a[k] == b[k]))
            return false;
    return true;
}

bool gen_eq(const Generator& a, const Generator& b) {
    if (a.kind != b.kind || a.i != b.i || a.j != b.j)
        return false;
    if (!same_ring(a.ring(), b.ring()))
        return false;
    if (a.is_transvection())
        return a.param == b.param;
    return same_vec(a.u, b.u) && same_vec(a.v, b.v);
}

bool all_zero(const Vec& v) {
    for (const auto& e : v)
        if (!e.is_zero())
            return false;
    return true;
}

bool acts_trivially(const Generator& g) {
    if (g.is_transvection())
        return g.param.is_zero();
    if (g.kind == GenKind::EA || g.kind == GenKind::EB)
        return all_zero(g.u);
    return all_zero(g.u) || all_zero(g.v);
}

} // namespace

GeneratorWord free_reduce(const GeneratorWord& w) {
    GeneratorWord out;
    out.reserve(w.size());
    for (const auto& l : w) {
        if (acts_trivially(l.gen))
            continue;
        if (!out.empty() && out.back().exp == -l.exp && gen_eq(out.back().gen, l.gen))
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

GeneratorWord lift(const GeneratorWord& w, const RingPtr& target) {
    GeneratorWord r = w;
    for (auto& l : r)
        l.gen = map_params(l.gen, [&](const RingElement& e) { return lift(e, target); });
    return r;
}

GeneratorWord apply(const Substitution& s, const GeneratorWord& w) {
    GeneratorWord r = w;
    for (auto& l : r)
        l.gen = map_params(l.gen, [&](const RingElement& e) { return s.apply(e); });
    return r;
}

std::string word_str(const QuadSpace& qs, const GeneratorWord& w) {
    std::ostringstream os;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k)
            os << " ";
        os << w[k].gen.str(qs);
        if (w[k].exp == -1)
            os << "^-1";
    }
    return os.str();
}

GeneratorWord decompose_to_transvections(const QuadSpace& qs, Side side, const Vec& a,
                                         DecomposeMode mode) {
    if (a.size() != qs.n)
        throw std::invalid_argument("vector length does not match the space");
    require_vec(a, "decompose");
    const RingPtr& ring = a[0].ring();

    std::size_t first = a.size();
    std::size_t nonzero = 0;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (!a[k].is_zero()) {
            ++nonzero;
            if (first == a.size())
                first = k;
        }
    if (nonzero == 0)
        return {};

    auto single = [&](std::size_t idx, const RingElement& lam) {
        Generator g = side == Side::A ? Generator::t1(idx, lam) : Generator::t2(idx, lam);
        return Letter{g, 1};
    };
    if (nonzero == 1)
        return {single(first, a[first])};

    Vec rest = a;
    rest[first] = RingElement::zero(ring);
    GeneratorWord tail = decompose_to_transvections(qs, side, rest, mode);
    RingElement half = a[first] * Rational(1, 2);

    GeneratorWord comm;
    if (mode == DecomposeMode::Strict) {
        comm = inverse_word(tail);
        comm.push_back(single(first, half));
        comm = concat(comm, tail);
        comm.push_back(single(first, -half));
    } else {
        Vec head(a.size(), RingElement::zero(ring));
        head[first] = -half;
        Generator g = side == Side::A ? Generator::caa(head, rest) : Generator::cbb(head, rest);
        comm = {Letter{g, 1}};
    }

    GeneratorWord out = concat(comm, tail);
    out.push_back(single(first, a[first]));
    return out;
}

GeneratorWord expand_commutator_tags(const GeneratorWord& w) {
    GeneratorWord r;
    r.reserve(w.size());
    for (const auto& l : w) {
        if (!l.gen.is_commutator_tag()) {
            r.push_back(l);
            continue;
        }
        Generator gu = l.gen.kind == GenKind::CBB ? Generator::eb(l.gen.u) : Generator::ea(l.gen.u);
        Generator gv = l.gen.kind == GenKind::CAA ? Generator::ea(l.gen.v) : Generator::eb(l.gen.v);
        GeneratorWord c = {{gv, -1}, {gu, -1}, {gv, 1}, {gu, 1}};
        if (l.exp == -1)
            c = inverse_word(c);
        r = concat(r, c);
    }
    return r;
}

GeneratorWord homotopize(const QuadSpace& qs, const GeneratorWord& w, const std::string& var) {
    (void)qs;
    if (w.empty())
        return {};
    RingPtr src = w[0].gen.ring();
    if (src->index_of(var))
        throw std::invalid_argument("homotopy variable '" + var + "' already present");
    RingPtr target = with_variable(src, var);
    RingElement t = RingElement::variable(target, var);
    GeneratorWord r = expand_commutator_tags(w);
    for (auto& l : r)
        l.gen = map_params(l.gen, [&](const RingElement& e) { return lift(e, target) * t; });
    return r;
}

GeneratorWord scale_word_params(const GeneratorWord& w, const RingElement& c) {
    GeneratorWord r = expand_commutator_tags(w);
    for (auto& l : r)
        l.gen = map_params(l.gen, [&](const RingElement& e) { return e * c; });
    return r;
}

// --- randomized letters -------------------------------------------------------

namespace {

Polynomial random_small_poly(const RingPtr& ring, std::mt19937_64& rng, bool nonzero) {
    std::uniform_int_distribution<int> coeff(-2, 2);
    std::uniform_int_distribution<std::size_t> nterms(1, 2);
    Polynomial p = Polynomial::constant(ring->nvars(), Rational(0));
    std::size_t k = nterms(rng);
    for (std::size_t t = 0; t < k; ++t) {
        Exponents e(ring->nvars(), 0);
        if (ring->nvars() > 0) {
            std::uniform_int_distribution<std::size_t> pick(0, ring->nvars());
            std::size_t which = pick(rng); // == nvars means constant term
            if (which < ring->nvars())
                e[which] = 1;
        }
        p += Polynomial::monomial(ring->nvars(), e, Rational(coeff(rng)));
    }
    if (nonzero && p.is_zero())
        p = Polynomial::constant(ring->nvars(), Rational(1));
    return p;
}

RingElement random_param(const RingPtr& ring, std::mt19937_64& rng, bool nonzero) {
    return RingElement::from_polynomial(ring, random_small_poly(ring, rng, nonzero));
}

} // namespace

Generator random_generator(const QuadSpace& qs, const RingPtr& ring, std::mt19937_64& rng) {
    std::vector<GenKind> kinds = {GenKind::T1, GenKind::T2, GenKind::EA, GenKind::EB,
                                  GenKind::CAA, GenKind::CBB};
    if (qs.n >= 2) {
        kinds.push_back(GenKind::T3);
        kinds.push_back(GenKind::T4);
        kinds.push_back(GenKind::T5);
        kinds.push_back(GenKind::CAB);
    }
    std::uniform_int_distribution<std::size_t> pick(0, kinds.size() - 1);
    GenKind kind = kinds[pick(rng)];
    std::uniform_int_distribution<std::size_t> idx(0, qs.n - 1);

    auto rand_vec = [&](bool nonzero) {
        Vec u;
        for (std::size_t k = 0; k < qs.n; ++k)
            u.push_back(random_param(ring, rng, false));
        if (nonzero) {
            bool all_zero = std::all_of(u.begin(), u.end(),
                                        [](const RingElement& e) { return e.is_zero(); });
            if (all_zero)
                u[idx(rng)] = RingElement::one(ring);
        }
        return u;
    };

    switch (kind) {
    case GenKind::T1:
        return Generator::t1(idx(rng), random_param(ring, rng, true));
    case GenKind::T2:
        return Generator::t2(idx(rng), random_param(ring, rng, true));
    case GenKind::T3:
    case GenKind::T4:
    case GenKind::T5: {
        std::size_t i = idx(rng), j = idx(rng);
        while (j == i)
            j = idx(rng);
        RingElement lam = random_param(ring, rng, true);
        if (kind == GenKind::T3)
            return Generator::t3(i, j, lam);
        if (kind == GenKind::T4)
            return Generator::t4(i, j, lam);
        return Generator::t5(i, j, lam);
    }
    case GenKind::EA:
        return Generator::ea(rand_vec(true));
    case GenKind::EB:
        return Generator::eb(rand_vec(true));
    case GenKind::CAB: {
        // Disjoint supports keep the parameter vectors orthogonal.
        std::size_t i = idx(rng), j = idx(rng);
        while (j == i)
            j = idx(rng);
        Vec u(qs.n, RingElement::zero(ring)), v(qs.n, RingElement::zero(ring));
        u[i] = random_param(ring, rng, true);
        v[j] = random_param(ring, rng, true);
        return Generator::cab(std::move(u), std::move(v));
    }
    case GenKind::CAA:
        return Generator::caa(rand_vec(true), rand_vec(true));
    case GenKind::CBB:
        return Generator::cbb(rand_vec(true), rand_vec(true));
    }
    throw std::logic_error("unreachable");
}

GeneratorWord random_word(const QuadSpace& qs, const RingPtr& ring, std::mt19937_64& rng,
                          std::size_t len) {
    GeneratorWord w;
    std::uniform_int_distribution<int> sign(0, 1);
    for (std::size_t k = 0; k < len; ++k)
        w.push_back(Letter{random_generator(qs, ring, rng), sign(rng) ? 1 : -1});
    return w;
}

} // namespace eoq
