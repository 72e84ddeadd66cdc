#include "eoq/pipeline.hpp"

#include "eoq/errors.hpp"

#include <random>
#include <stdexcept>

namespace eoq {

namespace {

Substitution eval_at(const RingPtr& r, const std::string& var, long value) {
    return Substitution::evaluate(r, var, Polynomial::constant(r->nvars(), Rational(value)));
}

// Move a point into the word's ring before acting; empty words act anywhere.
QuadricPoint act_lifted(const QuadSpace& qs, const GeneratorWord& w, const QuadricPoint& pt) {
    if (w.empty())
        return pt;
    const RingPtr& wr = w.front().gen.ring();
    if (same_ring(wr, pt.ring()))
        return act(qs, w, pt);
    return act(qs, w, lift(pt, wr));
}

QuadricPoint act_lifted(const QuadSpace& qs, const Mat& m, const QuadricPoint& pt) {
    if (same_ring(m.ring(), pt.ring()))
        return act(qs, m, pt);
    return act(qs, m, lift(pt, m.ring()));
}

Vec negated(Vec v) {
    for (auto& e : v)
        e = -e;
    return v;
}

Vec lift_vec(const Vec& v, const RingPtr& target) {
    Vec r;
    r.reserve(v.size());
    for (const auto& e : v)
        r.push_back(lift(e, target));
    return r;
}

Vec apply_vec(const Substitution& s, const Vec& v) {
    Vec r;
    r.reserve(v.size());
    for (const auto& e : v)
        r.push_back(s.apply(e));
    return r;
}

// Skip links that do nothing, so trivial instances give empty chains.
void push_word_link(CertificateChain& chain, QuadricPoint from, QuadricPoint to,
                    GeneratorWord w, std::string note) {
    if (w.empty() && point_eq(from, to))
        return;
    chain.links.push_back({LinkKind::Word, std::move(from), std::move(to), std::move(w),
                           Mat{}, HomotopyCertificate{}, std::move(note)});
}

} // namespace

bool is_monic_in(const Polynomial& g, std::size_t var) {
    int d = g.degree_in(var);
    if (d < 0)
        return false;
    for (const auto& [e, c] : g.terms()) {
        if (e[var] != d)
            continue;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (i != var && e[i] != 0)
                return false;
        if (!(c == Rational(1)))
            return false;
    }
    return true;
}

void verify_chain(const QuadSpace& qs, const CertificateChain& chain) {
    for (std::size_t k = 0; k < chain.links.size(); ++k) {
        const ChainLink& l = chain.links[k];
        auto fail = [&](const std::string& msg) {
            throw VerifyError("link " + std::to_string(k + 1) + ": " + msg);
        };

        for (const QuadricPoint* pt : {&l.from, &l.to}) {
            if (!pt->last.valid() || pt->p.size() != pt->f.size())
                fail("malformed endpoint");
            if (pt->n() != qs.n)
                fail("endpoint dimension does not match the space");
            if (!q_membership(*pt))
                fail("endpoint is off the quadric: defect " +
                     membership_defect(*pt).str());
        }
        if (k > 0 && !point_eq(chain.links[k - 1].to, l.from))
            fail("does not continue the previous link");

        try {
            switch (l.kind) {
            case LinkKind::Word: {
                if (!point_eq(act_lifted(qs, l.word, l.from), l.to))
                    fail("word does not carry the source to the target");
                break;
            }
            case LinkKind::Matrix: {
                if (!is_isometry(qs, l.matrix))
                    fail("matrix does not preserve the form");
                if (!point_eq(act_lifted(qs, l.matrix, l.from), l.to))
                    fail("matrix does not carry the source to the target");
                break;
            }
            case LinkKind::Homotopy: {
                if (!verify_homotopy(l.homotopy))
                    fail("family fails its own certificate");
                if (!verify_homotopy(l.homotopy, l.from, l.to))
                    fail("family endpoints do not match the link");
                break;
            }
            }
        } catch (const std::invalid_argument& e) {
            fail(std::string("witness is malformed: ") + e.what());
        }
    }
}

void ingest_verify(const QuadSpace& qs, const MonicInstance& inst) {
    if (!inst.H.last.valid())
        throw WitnessError("instance carries no family");
    if (inst.H.variant != Variant::QPrime)
        throw WitnessError("the family must be a unit-level point");
    if (inst.H.n() != qs.n || inst.H.p.size() != inst.H.f.size())
        throw WitnessError("family dimension does not match the space");

    const RingPtr& AT = inst.H.ring();
    if (!AT->inverted.empty())
        throw WitnessError("the family must live over the plain parameter ring");
    auto tidx = AT->index_of("T");
    if (!tidx)
        throw WitnessError("the family's ring has no parameter T");
    if (inst.g.nvars() != AT->nvars() || inst.g.is_constant() ||
        !is_monic_in(inst.g, *tidx))
        throw WitnessError("g must be nonconstant and monic in the parameter");
    if (!q_membership(inst.H))
        throw WitnessError("the family is off the quadric: defect " +
                           membership_defect(inst.H).str());

    RingPtr ATg = with_generator(AT, inst.g);
    Substitution at0 = eval_at(AT, "T", 0), at1 = eval_at(AT, "T", 1);
    RingPtr A = at0.target();
    QuadricPoint H0 = apply(at0, inst.H);
    QuadricPoint H1 = apply(at1, inst.H);

    auto ring_check = [](const GeneratorWord& w, const RingPtr& expect, const char* name) {
        for (const Letter& l : w)
            if (!same_ring(l.gen.ring(), expect))
                throw WitnessError(std::string(name) + " lives over the wrong ring");
    };
    ring_check(inst.bundle.sigma_g, ATg, "sigma_g");
    ring_check(inst.bundle.sigma_contract, AT, "sigma_contract");
    ring_check(inst.bundle.sigma_endpoints, A, "sigma_endpoints");

    try {
        if (!point_eq(act_lifted(qs, inst.bundle.sigma_g, lift(inst.H, ATg)),
                      base_point(qs, ATg, Variant::QPrime)))
            throw WitnessError("sigma_g does not carry the family to the base point");
        if (!point_eq(act_lifted(qs, inst.bundle.sigma_contract, lift(H0, AT)), inst.H))
            throw WitnessError("sigma_contract does not rebuild the family from its start");
        if (!point_eq(act_lifted(qs, inst.bundle.sigma_endpoints, H0), H1))
            throw WitnessError("sigma_endpoints does not connect the endpoints");
    } catch (const std::invalid_argument& e) {
        throw WitnessError(std::string("bundle is malformed: ") + e.what());
    }
    // recursive_bundle, when present, is carried but never consumed.
}

CertificateChain base_case_T(const QuadSpace& qs, const MonicInstance& inst) {
    ingest_verify(qs, inst);
    const RingPtr& AT = inst.H.ring();
    Substitution at0 = eval_at(AT, "T", 0), at1 = eval_at(AT, "T", 1);
    RingPtr A = at0.target();
    QuadricPoint H0 = apply(at0, inst.H);
    QuadricPoint H1 = apply(at1, inst.H);
    QuadricPoint baseA = base_point(qs, A, Variant::QPrime);

    // At parameter 1 the inverted generator becomes the unit g(1).
    RingPtr ATg = with_generator(AT, inst.g);
    GeneratorWord sg1;
    try {
        // Qualified: ADL on std::vector would otherwise consider std::apply.
        sg1 = eoq::apply(eval_at(ATg, "T", 1), inst.bundle.sigma_g);
    } catch (const std::invalid_argument&) {
        throw VerifyError("descending at parameter 1 needs g(1) invertible");
    }

    CertificateChain chain;
    push_word_link(chain, inst.H, H0, inverse_word(inst.bundle.sigma_contract),
                   "undo the contraction");
    push_word_link(chain, H0, H1, inst.bundle.sigma_endpoints, "cross to the far endpoint");
    push_word_link(chain, H1, baseA, sg1, "descend at parameter 1");
    chain.meta = "direct descent: the inverted generator is a parameter power";
    verify_chain(qs, chain);
    return chain;
}

GeneratorWord collapse_chain(const QuadSpace& qs, const CertificateChain& chain) {
    if (chain.links.empty())
        return {};
    // Act order is right to left, so earlier links concatenate on the right.
    const RingPtr& target = chain.start().ring();
    GeneratorWord out;
    for (const ChainLink& l : chain.links) {
        if (l.kind != LinkKind::Word)
            throw std::invalid_argument("only all-word chains collapse to a single word");
        out = concat(lift(l.word, target), out);
    }
    if (!point_eq(act_lifted(qs, out, chain.start()), chain.finish()))
        throw VerifyError("collapsed word does not reproduce the chain's endpoints");
    return out;
}

CertificateChain monic_inversion_transform(const QuadSpace& qs, const MonicInstance& inst,
                                           int bound) {
    ingest_verify(qs, inst);
    const RingPtr& AT = inst.H.ring();
    std::size_t tidx = *AT->index_of("T");

    // Powers of the parameter have a constant reciprocal and descend directly.
    if (inst.g.reciprocal_in(tidx).is_constant())
        return base_case_T(qs, inst);

    RingPtr ATg = with_generator(AT, inst.g);

    // One word carrying H(1) to the base point over A[T] with g inverted:
    // undo the endpoint crossing, contract, then descend.
    GeneratorWord sigma =
        concat(lift(inst.bundle.sigma_g, ATg),
               concat(lift(inst.bundle.sigma_contract, ATg),
                      lift(inverse_word(inst.bundle.sigma_endpoints), ATg)));

    // Trade the g-denominators for the reciprocal chart: T becomes 1/U, g
    // becomes the reciprocal polynomial g* with g*(0) = 1.
    Substitution swap = Substitution::swap_to_inverse(ATg, "T", "U");
    GeneratorWord sigma_U = eoq::apply(swap, sigma);
    RingPtr RU = swap.target();
    Polynomial upoly = Polynomial::variable(RU->nvars(), *RU->index_of("U"));
    if (RU->inverted.size() != 2)
        throw VerifyError("unexpected chart layout after the reciprocal swap");
    Polynomial gstar =
        RU->inverted[0] == upoly ? RU->inverted[1] : RU->inverted[0];

    // Factor over the two charts: alpha keeps only the U-denominator, beta
    // only the g*-denominator, alpha * beta = sigma_U.
    SplitResult sp = split_sigma(qs, RU, sigma_U, upoly, gstar, bound);

    Substitution at0 = eval_at(AT, "T", 0), at1 = eval_at(AT, "T", 1);
    RingPtr A = at0.target();
    QuadricPoint H0 = apply(at0, inst.H);
    QuadricPoint H1 = apply(at1, inst.H);
    QuadricPoint baseA = base_point(qs, A, Variant::QPrime);

    // The two chart-local positions of one global family: beta pushes H(1)
    // forward, alpha pulls the base point back, and they agree in between.
    QuadricPoint v1 = act(qs, sp.beta, lift(H1, sp.beta.ring()));
    QuadricPoint v2 = act(qs, isometry_inverse(qs, sp.alpha), lift(baseA, sp.alpha.ring()));

    RingPtr AU = make_ring(RU->variables, {});
    Vec glued = patch_vector(v2.coords(), v1.coords(), sp.cert, AU);
    QuadricPoint w = QuadricPoint::from_coords(Variant::QPrime, glued);
    if (!q_membership(w))
        throw VerifyError("glued family is off the quadric");

    // Chart centers are honest evaluations: g*(0) = 1 and U = 1 are units.
    Mat m3 = apply(eval_at(sp.beta.ring(), "U", 0), sp.beta);
    Mat m5 = apply(eval_at(sp.alpha.ring(), "U", 1), sp.alpha);
    QuadricPoint w0 = apply(eval_at(AU, "U", 0), w);
    QuadricPoint w1 = apply(eval_at(AU, "U", 1), w);
    HomotopyCertificate hom =
        make_homotopy(apply(Substitution::rename(AU, "U", "W"), w), "W");

    CertificateChain chain;
    push_word_link(chain, inst.H, H0, inverse_word(inst.bundle.sigma_contract),
                   "undo the contraction");
    push_word_link(chain, H0, H1, inst.bundle.sigma_endpoints, "cross to the far endpoint");
    chain.links.push_back({LinkKind::Matrix, H1, w0, GeneratorWord{}, m3,
                           HomotopyCertificate{}, "enter the glued family"});
    chain.links.push_back({LinkKind::Homotopy, w0, w1, GeneratorWord{}, Mat{}, hom,
                           "walk the glued family"});
    chain.links.push_back({LinkKind::Matrix, w1, baseA, GeneratorWord{}, m5,
                           HomotopyCertificate{}, "descend to the base point"});
    chain.meta = "every intermediate point is constant along the original parameter";
    verify_chain(qs, chain);
    return chain;
}

OrchestrationResult main_theorem_orchestration(const QuadSpace& qs, const OrientationDatum& o,
                                               const Polynomial& g,
                                               std::optional<WitnessBundle> bundle, int bound) {
    auto [on_q, H] = orientation_to_point(o);
    (void)on_q;
    const RingPtr& AT = o.ring();
    auto tidx = AT->index_of("T");
    if (!tidx || g.nvars() != AT->nvars() || g.is_constant() || !is_monic_in(g, *tidx))
        throw WitnessError("g must be nonconstant and monic in the parameter");

    bool surjective_shape = o.s.is_zero();
    for (const auto& e : o.p)
        surjective_shape = surjective_shape && e.is_zero();

    MonicInstance inst;
    inst.H = H;
    inst.g = g;
    if (bundle) {
        inst.bundle = std::move(*bundle);
        inst.note = "ingested witness bundle";
    } else if (surjective_shape) {
        // H = (0, 2f, 1); one-sided vector letters move only the f block, so
        // explicit words for all three bundle roles can be written down.
        RingPtr ATg = with_generator(AT, g);
        Substitution at0 = eval_at(AT, "T", 0), at1 = eval_at(AT, "T", 1);
        Vec f0 = apply_vec(at0, o.f); // over A
        Vec f1 = apply_vec(at1, o.f);
        inst.bundle.sigma_g = {{Generator::eb(negated(lift_vec(o.f, ATg))), 1}};
        inst.bundle.sigma_contract = {{Generator::eb(o.f), 1},
                                      {Generator::eb(lift_vec(negated(f0), AT)), 1}};
        inst.bundle.sigma_endpoints = {{Generator::eb(f1), 1},
                                       {Generator::eb(negated(f0)), 1}};
        inst.note = "constructive bundle from surjective-shape data";
    } else {
        throw WitnessError("general-shape data needs an explicit witness bundle: only the "
                           "surjective shape (s = 0, p = 0) has a constructive one");
    }

    OrchestrationResult result{std::move(inst), CertificateChain{}};
    result.chain = monic_inversion_transform(qs, result.instance, bound);
    result.chain.meta +=
        "; existence is certified by this chain alone, the converse direction is not claimed";
    return result;
}

MonicInstance plant_instance(std::uint64_t seed, const QuadSpace& qs, const RingPtr& base_ring,
                             const Polynomial& g, std::size_t len) {
    if (base_ring->index_of("T"))
        throw std::invalid_argument("the base ring already carries the parameter name");
    if (!base_ring->inverted.empty())
        throw std::invalid_argument("the base ring must be plain");
    RingPtr AT = with_variable(base_ring, "T");
    std::size_t tidx = *AT->index_of("T");
    if (g.nvars() != AT->nvars() || g.is_constant() || !is_monic_in(g, tidx))
        throw std::invalid_argument("g must be nonconstant and monic in the parameter");
    RingPtr ATg = with_generator(AT, g);

    std::mt19937_64 rng(seed);
    GeneratorWord hidden = random_word(qs, base_ring, rng, len);
    GeneratorWord contracted = homotopize(qs, hidden, "T");
    QuadricPoint H = act_lifted(qs, contracted, base_point(qs, AT, Variant::QPrime));

    MonicInstance inst;
    inst.H = H;
    inst.g = g;
    inst.bundle.sigma_contract = contracted;
    inst.bundle.sigma_endpoints =
        contracted.empty() ? GeneratorWord{}
                           : eoq::apply(eval_at(AT, "T", 1), contracted);

    GeneratorWord sg = lift(inverse_word(contracted), ATg);
    if (qs.n >= 2 && !hidden.empty()) {
        // Base-point-fixing padding with honest g-denominators: hyperbolic
        // shears and disjoint-support commutator tags keep (0, 0, 1) fixed.
        std::uniform_int_distribution<int> count(1, 2), kindpick(0, 3), cpick(-2, 2),
            epick(1, 2);
        std::uniform_int_distribution<std::size_t> ipick(0, qs.n - 1),
            vpick(0, AT->nvars() - 1);
        auto param = [&] {
            Polynomial num = Polynomial::constant(AT->nvars(), Rational(cpick(rng)));
            num += Polynomial::variable(AT->nvars(), vpick(rng)) *
                   Polynomial::constant(AT->nvars(), Rational(cpick(rng)));
            if (num.is_zero())
                num = Polynomial::constant(AT->nvars(), Rational(1));
            std::vector<int> den(ATg->inverted.size(), 0);
            den[*ATg->generator_index(g)] = epick(rng);
            return RingElement::from(ATg, num, den);
        };
        GeneratorWord decoys;
        int k = count(rng);
        for (int i = 0; i < k; ++i) {
            std::size_t i1 = ipick(rng), j1 = ipick(rng);
            if (i1 == j1)
                j1 = (j1 + 1) % qs.n;
            switch (kindpick(rng)) {
            case 0:
                decoys.push_back({Generator::t3(i1, j1, param()), 1});
                break;
            case 1:
                decoys.push_back({Generator::t4(i1, j1, param()), 1});
                break;
            case 2:
                decoys.push_back({Generator::t5(i1, j1, param()), 1});
                break;
            default: {
                Vec u(qs.n, RingElement::zero(ATg)), v(qs.n, RingElement::zero(ATg));
                u[i1] = param();
                v[j1] = param();
                decoys.push_back({Generator::cab(std::move(u), std::move(v)), 1});
                break;
            }
            }
        }
        sg = concat(decoys, sg);
    }
    inst.bundle.sigma_g = sg;
    inst.note = "planted from a hidden contracted word";
    ingest_verify(qs, inst);
    return inst;
}

} // namespace eoq
