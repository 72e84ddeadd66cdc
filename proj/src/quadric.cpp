#include "eoq/quadric.hpp"

#include "eoq/errors.hpp"

#include <sstream>

namespace eoq {

Vec QuadricPoint::coords() const {
    Vec v;
    v.reserve(2 * p.size() + 1);
    v.insert(v.end(), p.begin(), p.end());
    v.insert(v.end(), f.begin(), f.end());
    v.push_back(last);
    return v;
}

QuadricPoint QuadricPoint::from_coords(Variant variant, const Vec& v) {
    if (v.size() % 2 == 0)
        throw std::invalid_argument("coordinate vector must have odd length 2n+1");
    std::size_t n = v.size() / 2;
    QuadricPoint pt;
    pt.variant = variant;
    pt.p.assign(v.begin(), v.begin() + n);
    pt.f.assign(v.begin() + n, v.begin() + 2 * n);
    pt.last = v[2 * n];
    return pt;
}

std::string QuadricPoint::str() const {
    std::ostringstream os;
    auto vec = [&](const Vec& w) {
        os << "(";
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i)
                os << ", ";
            os << w[i].str();
        }
        os << ")";
    };
    os << (variant == Variant::Q ? "Q" : "Q'");
    vec(p);
    vec(f);
    os << "(" << last.str() << ")";
    return os.str();
}

QuadricPoint base_point(const QuadSpace& qs, const RingPtr& ring, Variant variant) {
    QuadricPoint pt;
    pt.variant = variant;
    pt.p.assign(qs.n, RingElement::zero(ring));
    pt.f.assign(qs.n, RingElement::zero(ring));
    pt.last = variant == Variant::Q ? RingElement::zero(ring) : RingElement::one(ring);
    return pt;
}

RingElement membership_defect(const QuadricPoint& pt) {
    if (pt.p.size() != pt.f.size())
        throw std::invalid_argument("p and f must have equal length");
    const RingPtr& ring = pt.ring();
    RingElement fp = RingElement::zero(ring);
    for (std::size_t i = 0; i < pt.p.size(); ++i)
        fp += pt.f[i] * pt.p[i];
    if (pt.variant == Variant::Q)
        return fp - pt.last * (RingElement::one(ring) - pt.last);
    return fp + pt.last * pt.last - RingElement::one(ring);
}

bool q_membership(const QuadricPoint& pt) {
    return membership_defect(pt).is_zero();
}

QuadricPoint q_to_qprime(const QuadricPoint& pt) {
    if (pt.variant != Variant::Q)
        throw std::invalid_argument("expected a Q point");
    if (!q_membership(pt))
        throw VerifyError("point fails its quadric equation");
    QuadricPoint r;
    r.variant = Variant::QPrime;
    const Rational two(2);
    for (const auto& e : pt.p)
        r.p.push_back(e * two);
    for (const auto& e : pt.f)
        r.f.push_back(e * two);
    r.last = RingElement::one(pt.ring()) - pt.last * two;
    return r;
}

QuadricPoint qprime_to_q(const QuadricPoint& pt) {
    if (pt.variant != Variant::QPrime)
        throw std::invalid_argument("expected a Q' point");
    if (!q_membership(pt))
        throw VerifyError("point fails its quadric equation");
    QuadricPoint r;
    r.variant = Variant::Q;
    const Rational half(1, 2);
    for (const auto& e : pt.p)
        r.p.push_back(e * half);
    for (const auto& e : pt.f)
        r.f.push_back(e * half);
    r.last = (RingElement::one(pt.ring()) - pt.last) * half;
    return r;
}

QuadricPoint act(const QuadSpace& qs, const GeneratorWord& w, const QuadricPoint& pt) {
    if (pt.variant != Variant::QPrime)
        throw std::invalid_argument("words act on Q' points");
    if (pt.n() != qs.n)
        throw std::invalid_argument("point dimension does not match the space");
    return QuadricPoint::from_coords(Variant::QPrime, act_word(qs, w, pt.coords()));
}

QuadricPoint act(const QuadSpace& qs, const Mat& m, const QuadricPoint& pt) {
    if (pt.variant != Variant::QPrime)
        throw std::invalid_argument("matrices act on Q' points");
    if (pt.n() != qs.n || m.rows() != qs.dim())
        throw std::invalid_argument("dimension mismatch");
    return QuadricPoint::from_coords(Variant::QPrime, m * pt.coords());
}

namespace {

template <typename F> QuadricPoint map_coords(const QuadricPoint& pt, F&& f) {
    QuadricPoint r;
    r.variant = pt.variant;
    for (const auto& e : pt.p)
        r.p.push_back(f(e));
    for (const auto& e : pt.f)
        r.f.push_back(f(e));
    r.last = f(pt.last);
    return r;
}

} // namespace

QuadricPoint lift(const QuadricPoint& pt, const RingPtr& target) {
    return map_coords(pt, [&](const RingElement& e) { return lift(e, target); });
}

QuadricPoint restrict_to(const QuadricPoint& pt, const RingPtr& target) {
    return map_coords(pt, [&](const RingElement& e) { return restrict_to(e, target); });
}

QuadricPoint apply(const Substitution& s, const QuadricPoint& pt) {
    return map_coords(pt, [&](const RingElement& e) { return s.apply(e); });
}

bool point_eq(const QuadricPoint& a, const QuadricPoint& b, const RingPtr& ambient) {
    if (a.variant != b.variant || a.n() != b.n())
        return false;
    try {
        return vec_eq(lift(a.coords(), ambient), lift(b.coords(), ambient));
    } catch (const std::invalid_argument&) {
        return false;
    }
}

namespace {

std::optional<Vec> moved_coords(const QuadricPoint& pt, const RingPtr& ambient) {
    try {
        return lift(pt.coords(), ambient);
    } catch (const std::invalid_argument&) {
    }
    try {
        return restrict_to(pt.coords(), ambient);
    } catch (const std::invalid_argument&) {
    }
    return std::nullopt;
}

} // namespace

bool point_eq(const QuadricPoint& a, const QuadricPoint& b) {
    if (a.variant != b.variant || a.n() != b.n())
        return false;
    if (same_ring(a.ring(), b.ring()))
        return vec_eq(a.coords(), b.coords());
    for (const RingPtr& ambient : {a.ring(), b.ring()}) {
        auto va = moved_coords(a, ambient);
        auto vb = moved_coords(b, ambient);
        if (va && vb)
            return vec_eq(*va, *vb);
    }
    return false;
}

HomotopyCertificate make_homotopy(const QuadricPoint& family, const std::string& var) {
    const RingPtr& ring = family.ring();
    if (!ring->index_of(var))
        throw std::invalid_argument("family does not involve homotopy variable '" + var + "'");
    HomotopyCertificate h;
    h.family = family;
    h.var = var;
    auto at = [&](int val) {
        auto s = Substitution::evaluate(ring, var,
                                        Polynomial::constant(ring->nvars(), Rational(val)));
        return apply(s, family);
    };
    h.end0 = at(0);
    h.end1 = at(1);
    return h;
}

bool verify_homotopy(const HomotopyCertificate& h, const QuadricPoint& v0,
                     const QuadricPoint& v1) {
    const RingPtr& ring = h.family.ring();
    if (!ring->index_of(h.var))
        return false;
    if (!q_membership(h.family))
        return false;
    try {
        auto at = [&](int val) {
            auto s = Substitution::evaluate(ring, h.var,
                                            Polynomial::constant(ring->nvars(), Rational(val)));
            return apply(s, h.family);
        };
        return point_eq(at(0), v0) && point_eq(at(1), v1);
    } catch (const std::invalid_argument&) {
        return false;
    }
}

bool verify_homotopy(const HomotopyCertificate& h) {
    return verify_homotopy(h, h.end0, h.end1);
}

HomotopyCertificate reverse_homotopy(const HomotopyCertificate& h) {
    const RingPtr& ring = h.family.ring();
    auto vi = ring->index_of(h.var);
    if (!vi)
        throw std::invalid_argument("certificate lacks its homotopy variable");
    Polynomial flip = Polynomial::constant(ring->nvars(), Rational(1)) -
                      Polynomial::variable(ring->nvars(), *vi);
    auto s = Substitution::replace(ring, h.var, flip);
    HomotopyCertificate r;
    r.family = apply(s, h.family);
    r.var = h.var;
    r.end0 = h.end1;
    r.end1 = h.end0;
    return r;
}

HomotopyCertificate contract_parameter(const QuadricPoint& H, const std::string& tvar,
                                       const std::string& wvar) {
    const RingPtr& ring = H.ring();
    if (!ring->index_of(tvar))
        throw std::invalid_argument("point does not involve parameter '" + tvar + "'");
    RingPtr wide = with_variable(ring, wvar); // throws on name collision
    std::size_t ti = *wide->index_of(tvar);
    std::size_t wi = *wide->index_of(wvar);
    Polynomial tw = Polynomial::variable(wide->nvars(), ti) *
                    Polynomial::variable(wide->nvars(), wi);
    auto scale = Substitution::replace(wide, tvar, tw);
    QuadricPoint family = apply(scale, lift(H, wide));
    HomotopyCertificate h = make_homotopy(family, wvar);
    return h;
}

std::pair<QuadricPoint, QuadricPoint> orientation_to_point(const OrientationDatum& o) {
    if (o.f.size() != o.p.size())
        throw std::invalid_argument("orientation data: f and p must have equal length");
    QuadricPoint pt;
    pt.variant = Variant::Q;
    pt.p = o.p;
    pt.f = o.f;
    pt.last = o.s;
    if (!q_membership(pt))
        throw WitnessError("orientation witness identity f(p) = s(1-s) fails");
    return {pt, q_to_qprime(pt)};
}

HomotopyCertificate surjection_certificate(const OrientationDatum& o, const std::string& wvar) {
    const RingPtr& ring = o.ring();
    bool shape = o.s.is_zero();
    for (const auto& e : o.p)
        shape = shape && e.is_zero();
    if (!shape)
        throw WitnessError("surjection certificate needs data of shape s = 0, p = 0");
    RingPtr wide = with_variable(ring, wvar);
    RingElement w = RingElement::variable(wide, wvar);
    RingElement fade = (RingElement::one(wide) - w) * Rational(2);
    QuadricPoint family;
    family.variant = Variant::QPrime;
    for (std::size_t i = 0; i < o.f.size(); ++i) {
        family.p.push_back(RingElement::zero(wide));
        family.f.push_back(lift(o.f[i], wide) * fade);
    }
    family.last = RingElement::one(wide);
    return make_homotopy(family, wvar);
}

} // namespace eoq
