#include "eoq/ring.hpp"

#include "eoq/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace eoq {

// --- descriptors -----------------------------------------------------------

std::optional<std::size_t> RingDescriptor::index_of(const std::string& name) const {
    auto it = std::find(variables.begin(), variables.end(), name);
    if (it == variables.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - variables.begin());
}

std::optional<std::size_t> RingDescriptor::generator_index(const Polynomial& g) const {
    for (std::size_t i = 0; i < inverted.size(); ++i)
        if (inverted[i] == g)
            return i;
    return std::nullopt;
}

bool RingDescriptor::operator==(const RingDescriptor& o) const {
    return variables == o.variables && inverted == o.inverted;
}

namespace {

bool valid_identifier(const std::string& s) {
    if (s.empty())
        return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
        return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

} // namespace

RingPtr make_ring(std::vector<std::string> variables, std::vector<Polynomial> inverted) {
    for (const auto& v : variables) {
        if (!valid_identifier(v))
            throw std::invalid_argument("bad variable name '" + v + "'");
        if (std::count(variables.begin(), variables.end(), v) != 1)
            throw std::invalid_argument("duplicate variable name '" + v + "'");
    }
    for (std::size_t i = 0; i < variables.size(); ++i) {
        if (variables[i] == "T" && i + 1 != variables.size())
            throw std::invalid_argument("the parameter variable T must sit last");
    }
    for (const auto& g : inverted) {
        if (g.nvars() != variables.size())
            throw std::invalid_argument("inverted generator lives in the wrong variable space");
        if (g.is_constant())
            throw std::invalid_argument("inverted generator must be nonconstant");
    }
    for (std::size_t i = 0; i < inverted.size(); ++i)
        for (std::size_t j = i + 1; j < inverted.size(); ++j)
            if (inverted[i] == inverted[j])
                throw std::invalid_argument("duplicate inverted generator");
    auto r = std::make_shared<RingDescriptor>();
    r->variables = std::move(variables);
    r->inverted = std::move(inverted);
    return r;
}

RingPtr with_variable(const RingPtr& ring, const std::string& name) {
    if (ring->index_of(name))
        throw std::invalid_argument("variable '" + name + "' already present");
    std::vector<std::string> vars = ring->variables;
    // Fresh variables slot in just before a trailing "T".
    std::size_t at = vars.size();
    if (!vars.empty() && vars.back() == "T" && name != "T")
        at = vars.size() - 1;
    vars.insert(vars.begin() + static_cast<std::ptrdiff_t>(at), name);

    std::vector<std::size_t> map(ring->nvars());
    for (std::size_t i = 0; i < ring->nvars(); ++i)
        map[i] = i < at ? i : i + 1;
    std::vector<Polynomial> gens;
    gens.reserve(ring->inverted.size());
    for (const auto& g : ring->inverted)
        gens.push_back(g.remap(vars.size(), map));
    return make_ring(std::move(vars), std::move(gens));
}

RingPtr with_generator(const RingPtr& ring, const Polynomial& g) {
    std::vector<Polynomial> gens = ring->inverted;
    gens.push_back(g);
    return make_ring(ring->variables, std::move(gens));
}

RingPtr without_generators(const RingPtr& ring) {
    return make_ring(ring->variables, {});
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
    if (a == b)
        return true;
    if (!a || !b)
        return false;
    return *a == *b;
}

// --- elements ----------------------------------------------------------------

RingElement RingElement::from(RingPtr ring, Polynomial num, std::vector<int> den) {
    if (!ring)
        throw std::invalid_argument("null ring descriptor");
    if (num.nvars() != ring->nvars())
        throw std::invalid_argument("numerator lives in the wrong variable space");
    if (den.size() != ring->inverted.size())
        throw std::invalid_argument("denominator exponent vector has wrong length");
    for (int e : den)
        if (e < 0)
            throw std::invalid_argument("negative denominator exponent");
    RingElement r;
    r.ring_ = std::move(ring);
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    return r;
}

RingElement RingElement::from_polynomial(RingPtr ring, Polynomial num) {
    std::vector<int> den(ring->inverted.size(), 0);
    return from(std::move(ring), std::move(num), std::move(den));
}

RingElement RingElement::constant(const RingPtr& ring, const Rational& c) {
    return from_polynomial(ring, Polynomial::constant(ring->nvars(), c));
}

RingElement RingElement::variable(const RingPtr& ring, const std::string& name) {
    auto idx = ring->index_of(name);
    if (!idx)
        throw std::invalid_argument("no variable named '" + name + "'");
    return from_polynomial(ring, Polynomial::variable(ring->nvars(), *idx));
}

RingElement RingElement::zero(const RingPtr& ring) {
    return constant(ring, Rational(0));
}

RingElement RingElement::one(const RingPtr& ring) {
    return constant(ring, Rational(1));
}

namespace {

void require_same_ring(const RingElement& a, const RingElement& b) {
    if (!same_ring(a.ring(), b.ring()))
        throw std::invalid_argument("ring elements belong to different rings");
}

} // namespace

RingElement RingElement::operator-() const {
    RingElement r = *this;
    r.num_ = -r.num_;
    return r;
}

RingElement operator+(const RingElement& a, const RingElement& b) {
    require_same_ring(a, b);
    const auto& gens = a.ring()->inverted;
    std::vector<int> den(gens.size());
    Polynomial na = a.numerator();
    Polynomial nb = b.numerator();
    for (std::size_t i = 0; i < gens.size(); ++i) {
        int ea = a.denominator_exponents()[i];
        int eb = b.denominator_exponents()[i];
        den[i] = std::max(ea, eb);
        if (den[i] > ea)
            na *= gens[i].pow(den[i] - ea);
        if (den[i] > eb)
            nb *= gens[i].pow(den[i] - eb);
    }
    return RingElement::from(a.ring(), na + nb, std::move(den)).normalized();
}

RingElement operator-(const RingElement& a, const RingElement& b) {
    return a + (-b);
}

RingElement operator*(const RingElement& a, const RingElement& b) {
    require_same_ring(a, b);
    std::vector<int> den(a.denominator_exponents());
    for (std::size_t i = 0; i < den.size(); ++i)
        den[i] += b.denominator_exponents()[i];
    return RingElement::from(a.ring(), a.numerator() * b.numerator(), std::move(den)).normalized();
}

RingElement operator*(const RingElement& a, const Rational& c) {
    if (c == 0)
        return RingElement::zero(a.ring());
    return RingElement::from(a.ring(), a.numerator() * c, a.denominator_exponents());
}

bool RingElement::operator==(const RingElement& o) const {
    require_same_ring(*this, o);
    // Cross multiplication; generators are nonzero in a domain, so this is
    // exact equality in the localization regardless of representation.
    Polynomial lhs = num_;
    Polynomial rhs = o.num_;
    const auto& gens = ring_->inverted;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        int d = den_[i] - o.den_[i];
        if (d > 0)
            rhs *= gens[i].pow(d);
        else if (d < 0)
            lhs *= gens[i].pow(-d);
    }
    return lhs == rhs;
}

RingElement RingElement::normalized() const {
    RingElement r = *this;
    if (r.num_.is_zero()) {
        std::fill(r.den_.begin(), r.den_.end(), 0);
        return r;
    }
    const auto& gens = ring_->inverted;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        while (r.den_[i] > 0) {
            auto q = exact_divide(r.num_, gens[i]);
            if (!q)
                break;
            r.num_ = std::move(*q);
            --r.den_[i];
        }
    }
    return r;
}

std::optional<Polynomial> RingElement::integral() const {
    RingElement n = normalized();
    for (int e : n.den_)
        if (e != 0)
            return std::nullopt;
    return n.num_;
}

std::optional<RingElement> RingElement::cleared_of(std::size_t gen) const {
    if (gen >= ring_->inverted.size())
        throw std::invalid_argument("generator index out of range");
    RingElement r = *this;
    if (r.num_.is_zero()) {
        r.den_[gen] = 0;
        return r;
    }
    while (r.den_[gen] > 0) {
        auto q = exact_divide(r.num_, ring_->inverted[gen]);
        if (!q)
            return std::nullopt;
        r.num_ = std::move(*q);
        --r.den_[gen];
    }
    return r;
}

std::string RingElement::str() const {
    std::string num = num_.str(ring_->variables);
    bool trivial = std::all_of(den_.begin(), den_.end(), [](int e) { return e == 0; });
    if (trivial)
        return num;
    std::ostringstream os;
    os << "(" << num << ")/(";
    bool first = true;
    for (std::size_t i = 0; i < den_.size(); ++i) {
        if (den_[i] == 0)
            continue;
        if (!first)
            os << "*";
        first = false;
        std::string g = ring_->inverted[i].str(ring_->variables);
        if (ring_->inverted[i].term_count() > 1 || den_[i] > 1)
            os << "(" << g << ")";
        else
            os << g;
        if (den_[i] > 1)
            os << "^" << den_[i];
    }
    os << ")";
    return os.str();
}

// --- lift / restrict ---------------------------------------------------------

namespace {

std::vector<std::size_t> variable_embedding(const RingPtr& src, const RingPtr& dst,
                                            const Polynomial* only_for = nullptr,
                                            const char* what = "element") {
    std::vector<std::size_t> map(src->nvars(), 0);
    for (std::size_t i = 0; i < src->nvars(); ++i) {
        auto idx = dst->index_of(src->variables[i]);
        if (idx) {
            map[i] = *idx;
        } else if (only_for == nullptr || only_for->involves(i)) {
            throw std::invalid_argument(std::string("cannot move ") + what + ": variable '" +
                                        src->variables[i] + "' is absent from the target ring");
        } else {
            map[i] = 0; // unused slot
        }
    }
    return map;
}

} // namespace

RingElement lift(const RingElement& e, const RingPtr& target) {
    if (same_ring(e.ring(), target))
        return e;
    std::vector<std::size_t> map = variable_embedding(e.ring(), target);
    Polynomial num = e.numerator().remap(target->nvars(), map);
    std::vector<int> den(target->inverted.size(), 0);
    for (std::size_t i = 0; i < e.denominator_exponents().size(); ++i) {
        int ex = e.denominator_exponents()[i];
        if (ex == 0)
            continue;
        Polynomial g = e.ring()->inverted[i].remap(target->nvars(), map);
        auto slot = target->generator_index(g);
        if (!slot)
            throw std::invalid_argument("cannot lift: generator " +
                                        e.ring()->inverted[i].str(e.ring()->variables) +
                                        " is not inverted in the target ring");
        den[*slot] += ex;
    }
    return RingElement::from(target, std::move(num), std::move(den));
}

RingElement restrict_to(const RingElement& e, const RingPtr& target) {
    if (same_ring(e.ring(), target))
        return e;
    RingElement n = e.normalized();
    // Variables absent from the target must not occur.
    std::vector<std::size_t> map(n.ring()->nvars(), 0);
    for (std::size_t i = 0; i < n.ring()->nvars(); ++i) {
        auto idx = target->index_of(n.ring()->variables[i]);
        if (idx) {
            map[i] = *idx;
            continue;
        }
        bool used = n.numerator().involves(i);
        for (std::size_t k = 0; k < n.denominator_exponents().size() && !used; ++k)
            if (n.denominator_exponents()[k] > 0 && n.ring()->inverted[k].involves(i))
                used = true;
        if (used)
            throw std::invalid_argument("cannot restrict: variable '" + n.ring()->variables[i] +
                                        "' still occurs");
        map[i] = 0;
    }
    Polynomial num = n.numerator().remap(target->nvars(), map);
    std::vector<int> den(target->inverted.size(), 0);
    for (std::size_t i = 0; i < n.denominator_exponents().size(); ++i) {
        int ex = n.denominator_exponents()[i];
        if (ex == 0)
            continue;
        Polynomial g = n.ring()->inverted[i].remap(target->nvars(), map);
        auto slot = target->generator_index(g);
        if (!slot)
            throw std::invalid_argument("cannot restrict: generator " +
                                        n.ring()->inverted[i].str(n.ring()->variables) +
                                        " is not inverted in the target ring");
        den[*slot] += ex;
    }
    return RingElement::from(target, std::move(num), std::move(den));
}

// --- substitutions -------------------------------------------------------------

Substitution Substitution::evaluate(const RingPtr& src, const std::string& var, Polynomial value) {
    auto vi = src->index_of(var);
    if (!vi)
        throw std::invalid_argument("no variable named '" + var + "'");
    if (value.nvars() != src->nvars())
        throw std::invalid_argument("substitution value lives in the wrong variable space");
    if (value.involves(*vi))
        throw std::invalid_argument("substitution value may not involve the substituted variable");

    Substitution s;
    s.kind_ = Kind::Evaluate;
    s.source_ = src;
    s.var_ = *vi;
    s.payload_ = std::move(value);

    std::vector<std::string> vars;
    s.remap_.assign(src->nvars(), 0);
    for (std::size_t i = 0; i < src->nvars(); ++i) {
        if (i == *vi)
            continue;
        s.remap_[i] = vars.size();
        vars.push_back(src->variables[i]);
    }
    s.remap_[*vi] = 0; // never used: composing removes the variable

    std::vector<Polynomial> gens;
    s.gens_.resize(src->inverted.size());
    for (std::size_t i = 0; i < src->inverted.size(); ++i) {
        const Polynomial& g = src->inverted[i];
        Polynomial image = g.compose(*vi, s.payload_);
        if (image.is_constant()) {
            Rational c = image.constant_value();
            if (c == 0)
                throw std::invalid_argument("substitution kills inverted generator " +
                                            g.str(src->variables));
            s.gens_[i] = {false, 0, c, 0};
        } else {
            Polynomial moved = image.remap(vars.size(), s.remap_);
            // Identical images share a slot.
            std::size_t slot = gens.size();
            for (std::size_t k = 0; k < gens.size(); ++k)
                if (gens[k] == moved)
                    slot = k;
            if (slot == gens.size())
                gens.push_back(moved);
            s.gens_[i] = {true, slot, 1, 0};
        }
    }
    s.target_ = make_ring(std::move(vars), std::move(gens));
    return s;
}

Substitution Substitution::scale(const RingPtr& src, const std::string& var, Polynomial factor) {
    auto vi = src->index_of(var);
    if (!vi)
        throw std::invalid_argument("no variable named '" + var + "'");
    if (factor.nvars() != src->nvars())
        throw std::invalid_argument("scale factor lives in the wrong variable space");
    if (factor.involves(*vi))
        throw std::invalid_argument("scale factor may not involve the scaled variable");
    return replace(src, var, factor * Polynomial::variable(src->nvars(), *vi));
}

Substitution Substitution::replace(const RingPtr& src, const std::string& var, Polynomial value) {
    auto vi = src->index_of(var);
    if (!vi)
        throw std::invalid_argument("no variable named '" + var + "'");
    if (value.nvars() != src->nvars())
        throw std::invalid_argument("replacement lives in the wrong variable space");

    Substitution s;
    s.kind_ = Kind::Scale;
    s.source_ = src;
    s.target_ = src;
    s.var_ = *vi;
    s.payload_ = std::move(value);
    s.remap_.resize(src->nvars());
    for (std::size_t i = 0; i < src->nvars(); ++i)
        s.remap_[i] = i;

    s.gens_.resize(src->inverted.size());
    for (std::size_t i = 0; i < src->inverted.size(); ++i) {
        const Polynomial& g = src->inverted[i];
        if (!g.involves(*vi)) {
            s.gens_[i] = {true, i, 1, 0};
            continue;
        }
        Polynomial image = g.compose(*vi, s.payload_);
        if (image.is_constant()) {
            Rational c = image.constant_value();
            if (c == 0)
                throw std::invalid_argument("substitution kills inverted generator " +
                                            g.str(src->variables));
            s.gens_[i] = {false, 0, c, 0};
            continue;
        }
        auto slot = src->generator_index(image);
        if (!slot)
            throw std::invalid_argument("substitution maps generator " + g.str(src->variables) +
                                        " outside the inverted list");
        s.gens_[i] = {true, *slot, 1, 0};
    }
    return s;
}

Substitution Substitution::swap_to_inverse(const RingPtr& src, const std::string& var,
                                           const std::string& fresh) {
    auto vi = src->index_of(var);
    if (!vi)
        throw std::invalid_argument("no variable named '" + var + "'");
    if (*vi + 1 != src->nvars())
        throw std::invalid_argument("swap applies to the last (parameter) variable only");
    if (src->index_of(fresh))
        throw std::invalid_argument("fresh variable '" + fresh + "' already present");

    Substitution s;
    s.kind_ = Kind::SwapToInverse;
    s.source_ = src;
    s.var_ = *vi;
    s.remap_.resize(src->nvars());
    for (std::size_t i = 0; i < src->nvars(); ++i)
        s.remap_[i] = i;

    std::vector<std::string> vars = src->variables;
    vars.back() = fresh;

    std::vector<Polynomial> gens;
    gens.push_back(Polynomial::variable(src->nvars(), *vi)); // the fresh variable itself
    s.gens_.resize(src->inverted.size());
    for (std::size_t i = 0; i < src->inverted.size(); ++i) {
        const Polynomial& g = src->inverted[i];
        int d = g.degree_in(*vi);
        if (d <= 0) {
            std::size_t slot = gens.size();
            gens.push_back(g);
            s.gens_[i] = {true, slot, 1, 0};
            continue;
        }
        Polynomial star = g.reciprocal_in(*vi);
        if (star.is_constant()) {
            // Pure monomial in the parameter: c*var^d inverts to (1/c)*fresh^d.
            s.gens_[i] = {false, 0, star.constant_value(), d};
        } else {
            std::size_t slot = gens.size();
            gens.push_back(star);
            s.gens_[i] = {true, slot, 1, d};
        }
    }
    s.target_ = make_ring(std::move(vars), std::move(gens));
    return s;
}

Substitution Substitution::rename(const RingPtr& src, const std::string& var,
                                  const std::string& fresh) {
    auto vi = src->index_of(var);
    if (!vi)
        throw std::invalid_argument("no variable named '" + var + "'");
    if (src->index_of(fresh))
        throw std::invalid_argument("variable '" + fresh + "' already present");
    Substitution s;
    s.kind_ = Kind::Rename;
    s.source_ = src;
    s.var_ = *vi;
    s.remap_.resize(src->nvars());
    for (std::size_t i = 0; i < src->nvars(); ++i)
        s.remap_[i] = i;
    std::vector<std::string> vars = src->variables;
    vars[*vi] = fresh;
    s.target_ = make_ring(std::move(vars), src->inverted);
    s.gens_.resize(src->inverted.size());
    for (std::size_t i = 0; i < src->inverted.size(); ++i)
        s.gens_[i] = {true, i, 1, 0};
    return s;
}

RingElement Substitution::apply(const RingElement& e) const {
    if (!same_ring(e.ring(), source_))
        throw std::invalid_argument("substitution applied to an element of a different ring");

    switch (kind_) {
    case Kind::Rename: {
        return RingElement::from(target_, e.numerator(), e.denominator_exponents());
    }
    case Kind::Scale:
    case Kind::Evaluate: {
        Polynomial num = e.numerator().compose(var_, payload_);
        if (kind_ == Kind::Evaluate)
            num = num.remap(target_->nvars(), remap_);
        std::vector<int> den(target_->inverted.size(), 0);
        Rational scale_by(1);
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            int ex = e.denominator_exponents()[i];
            if (ex == 0)
                continue;
            if (gens_[i].kept) {
                den[gens_[i].slot] += ex;
            } else {
                Rational c = gens_[i].constant;
                for (int k = 0; k < ex; ++k)
                    scale_by /= c;
            }
        }
        num *= scale_by;
        return RingElement::from(target_, std::move(num), std::move(den)).normalized();
    }
    case Kind::SwapToInverse: {
        if (e.numerator().is_zero())
            return RingElement::zero(target_);
        int dnum = std::max(e.numerator().degree_in(var_), 0);
        Polynomial num = e.numerator().reciprocal_in(var_);
        std::vector<int> den(target_->inverted.size(), 0);
        Rational scale_by(1);
        long balance = -static_cast<long>(dnum);
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            int ex = e.denominator_exponents()[i];
            if (ex == 0)
                continue;
            balance += static_cast<long>(ex) * gens_[i].swap_degree;
            if (gens_[i].kept) {
                den[gens_[i].slot] += ex;
            } else {
                Rational c = gens_[i].constant;
                for (int k = 0; k < ex; ++k)
                    scale_by /= c;
            }
        }
        num *= scale_by;
        if (balance > 0) {
            Exponents mono(target_->nvars(), 0);
            mono[var_] = static_cast<int>(balance);
            num *= Polynomial::monomial(target_->nvars(), mono, Rational(1));
        } else if (balance < 0) {
            den[0] += static_cast<int>(-balance);
        }
        return RingElement::from(target_, std::move(num), std::move(den)).normalized();
    }
    }
    throw std::logic_error("unreachable");
}

} // namespace eoq
