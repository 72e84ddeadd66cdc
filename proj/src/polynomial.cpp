#include "eoq/polynomial.hpp"

#include "eoq/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace eoq {

bool TermOrder::operator()(const Exponents& a, const Exponents& b) const {
    // Later variables take precedence; ties break towards earlier ones.
    for (std::size_t k = a.size(); k-- > 0;) {
        if (a[k] != b[k])
            return a[k] < b[k];
    }
    return false;
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
    Polynomial p(nvars);
    if (c != 0)
        p.terms_.emplace(Exponents(nvars, 0), c);
    return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars)
        throw std::invalid_argument("variable index out of range");
    Polynomial p(nvars);
    Exponents e(nvars, 0);
    e[index] = 1;
    p.terms_.emplace(std::move(e), Rational(1));
    return p;
}

Polynomial Polynomial::monomial(std::size_t nvars, const Exponents& e, const Rational& c) {
    if (e.size() != nvars)
        throw std::invalid_argument("exponent vector has wrong length");
    for (int k : e)
        if (k < 0)
            throw std::invalid_argument("negative exponent in monomial");
    Polynomial p(nvars);
    if (c != 0)
        p.terms_.emplace(e, c);
    return p;
}

bool Polynomial::is_constant() const {
    if (terms_.empty())
        return true;
    if (terms_.size() > 1)
        return false;
    const Exponents& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
}

bool Polynomial::is_one() const {
    return is_constant() && constant_value() == 1;
}

Rational Polynomial::constant_value() const {
    if (terms_.empty())
        return Rational(0);
    if (!is_constant())
        throw std::invalid_argument("polynomial is not constant");
    return terms_.begin()->second;
}

int Polynomial::degree_in(std::size_t var) const {
    if (var >= nvars_)
        throw std::invalid_argument("variable index out of range");
    int d = -1;
    for (const auto& [e, c] : terms_)
        d = std::max(d, e[var]);
    return d;
}

bool Polynomial::involves(std::size_t var) const {
    if (var >= nvars_)
        throw std::invalid_argument("variable index out of range");
    for (const auto& [e, c] : terms_)
        if (e[var] > 0)
            return true;
    return false;
}

Rational Polynomial::coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
    if (c == 0)
        return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_)
        r.terms_.emplace(e, -c);
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (nvars_ != o.nvars_)
        throw std::invalid_argument("polynomial variable spaces differ");
    for (const auto& [e, c] : o.terms_)
        add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (nvars_ != o.nvars_)
        throw std::invalid_argument("polynomial variable spaces differ");
    for (const auto& [e, c] : o.terms_)
        add_term(e, -c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.nvars() != b.nvars())
        throw std::invalid_argument("polynomial variable spaces differ");

    // Large products accumulate into a flat array over the result's
    // monomial box when that box is no bigger than the pairwise work.
    // With the last variable given the largest stride, ascending flat
    // indices follow the term order, so the result map is rebuilt front
    // to back with end hints instead of one tree insert per pair.
    const std::size_t pairs = a.term_count() * b.term_count();
    if (a.nvars() > 0 && pairs >= 4096) {
        std::vector<std::size_t> stride(a.nvars());
        std::size_t total = 1;
        bool bounded = true;
        for (std::size_t k = 0; k < a.nvars() && bounded; ++k) {
            std::size_t dim = static_cast<std::size_t>(a.degree_in(k) + b.degree_in(k)) + 1;
            stride[k] = total;
            if (total > (std::size_t{1} << 22) / dim)
                bounded = false;
            else
                total *= dim;
        }
        if (bounded && total <= pairs) {
            std::vector<std::pair<std::size_t, const Rational*>> bflat;
            bflat.reserve(b.term_count());
            for (const auto& [eb, cb] : b.terms()) {
                std::size_t idx = 0;
                for (std::size_t k = 0; k < stride.size(); ++k)
                    idx += static_cast<std::size_t>(eb[k]) * stride[k];
                bflat.emplace_back(idx, &cb);
            }

            std::vector<Rational> dense(total);
            Rational tmp;
            for (const auto& [ea, ca] : a.terms()) {
                std::size_t base = 0;
                for (std::size_t k = 0; k < stride.size(); ++k)
                    base += static_cast<std::size_t>(ea[k]) * stride[k];
                for (const auto& [off, cb] : bflat) {
                    mpq_mul(tmp.get_mpq_t(), ca.get_mpq_t(), cb->get_mpq_t());
                    Rational& cell = dense[base + off];
                    mpq_add(cell.get_mpq_t(), cell.get_mpq_t(), tmp.get_mpq_t());
                }
            }

            Polynomial r(a.nvars());
            Exponents e(a.nvars());
            for (std::size_t idx = 0; idx < total; ++idx) {
                if (dense[idx] == 0)
                    continue;
                std::size_t rest = idx;
                for (std::size_t k = stride.size(); k-- > 0;) {
                    e[k] = static_cast<int>(rest / stride[k]);
                    rest %= stride[k];
                }
                r.terms_.emplace_hint(r.terms_.end(), e, std::move(dense[idx]));
            }
            return r;
        }
    }

    Polynomial r(a.nvars());
    Exponents e(a.nvars());
    for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
            for (std::size_t k = 0; k < e.size(); ++k)
                e[k] = ea[k] + eb[k];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
    *this = *this * o;
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_)
        v *= c;
    return *this;
}

bool Polynomial::operator==(const Polynomial& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
}

Polynomial Polynomial::pow(int k) const {
    if (k < 0)
        throw std::invalid_argument("negative polynomial power");
    Polynomial r = constant(nvars_, 1);
    for (int i = 0; i < k; ++i)
        r *= *this;
    return r;
}

Polynomial Polynomial::compose(std::size_t var, const Polynomial& value) const {
    if (var >= nvars_)
        throw std::invalid_argument("variable index out of range");
    if (value.nvars() != nvars_)
        throw std::invalid_argument("substituted value lives in a different variable space");
    // Collect coefficients of var^k, then Horner in `value`.
    int d = degree_in(var);
    if (d <= 0)
        return *this;
    std::vector<Polynomial> part(static_cast<std::size_t>(d) + 1, Polynomial(nvars_));
    for (const auto& [e, c] : terms_) {
        Exponents stripped = e;
        int k = stripped[var];
        stripped[var] = 0;
        part[static_cast<std::size_t>(k)].add_term(stripped, c);
    }
    Polynomial r = part[static_cast<std::size_t>(d)];
    for (int k = d - 1; k >= 0; --k) {
        r = r * value;
        r += part[static_cast<std::size_t>(k)];
    }
    return r;
}

Polynomial Polynomial::remap(std::size_t new_nvars, const std::vector<std::size_t>& map) const {
    if (map.size() != nvars_)
        throw std::invalid_argument("remap table has wrong length");
    Polynomial r(new_nvars);
    Exponents e2(new_nvars);
    for (const auto& [e, c] : terms_) {
        std::fill(e2.begin(), e2.end(), 0);
        for (std::size_t k = 0; k < nvars_; ++k) {
            if (e[k] != 0) {
                if (map[k] >= new_nvars)
                    throw std::invalid_argument("remap target out of range");
                e2[map[k]] += e[k];
            }
        }
        r.add_term(e2, c);
    }
    return r;
}

Polynomial Polynomial::reciprocal_in(std::size_t var) const {
    int d = degree_in(var);
    if (d <= 0)
        return *this;
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_) {
        Exponents e2 = e;
        e2[var] = d - e2[var];
        r.add_term(e2, c);
    }
    return r;
}

std::optional<std::vector<Rational>> Polynomial::dense_univariate(std::size_t var) const {
    int d = degree_in(var);
    std::vector<Rational> out(static_cast<std::size_t>(std::max(d, 0)) + 1, Rational(0));
    for (const auto& [e, c] : terms_) {
        for (std::size_t k = 0; k < nvars_; ++k)
            if (k != var && e[k] != 0)
                return std::nullopt;
        out[static_cast<std::size_t>(e[var])] = c;
    }
    return out;
}

std::optional<Polynomial> exact_divide(const Polynomial& p, const Polynomial& q) {
    if (q.is_zero())
        throw std::invalid_argument("exact division by the zero polynomial");
    if (p.nvars() != q.nvars())
        throw std::invalid_argument("polynomial variable spaces differ");
    Polynomial rem = p;
    Polynomial quot(p.nvars());
    const auto& [lq, cq] = *q.terms_.rbegin();
    Exponents diff(p.nvars());
    while (!rem.is_zero()) {
        const auto& [lr, cr] = *rem.terms_.rbegin();
        // The leading term of any true quotient is forced: LT(p) = LT(q)*LT(r).
        for (std::size_t k = 0; k < diff.size(); ++k) {
            diff[k] = lr[k] - lq[k];
            if (diff[k] < 0)
                return std::nullopt;
        }
        Polynomial t = Polynomial::monomial(p.nvars(), diff, cr / cq);
        quot += t;
        rem -= t * q;
    }
    return quot;
}

// --- printing ------------------------------------------------------------

namespace {

void print_monomial(std::ostringstream& os, const Exponents& e,
                    const std::vector<std::string>& names, bool lead_coeff_one) {
    bool first = lead_coeff_one;
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0)
            continue;
        if (!first)
            os << "*";
        first = false;
        os << names[k];
        if (e[k] > 1)
            os << "^" << e[k];
    }
}

} // namespace

std::string Polynomial::str(const std::vector<std::string>& names) const {
    if (names.size() != nvars_)
        throw std::invalid_argument("name list has wrong length");
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    // Descending term order: greatest monomial first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0)
                a = -a;
        }
        first = false;
        bool trivial_mono = std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
        if (trivial_mono) {
            os << rational_str(a);
        } else if (a == 1) {
            print_monomial(os, e, names, true);
        } else {
            os << rational_str(a) << "*";
            print_monomial(os, e, names, true);
        }
    }
    return os.str();
}

// --- parsing -------------------------------------------------------------

namespace {

struct PolyParser {
    const std::string& text;
    const std::vector<std::string>& names;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    [[noreturn]] void fail(const std::string& what) {
        throw ParseError("polynomial parse error at position " + std::to_string(pos) + ": " + what +
                         " in '" + text + "'");
    }

    std::string read_integer() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (pos == start)
            fail("expected digits");
        return text.substr(start, pos - start);
    }

    Rational read_rational() {
        std::string num = read_integer();
        if (eat('/'))
            return parse_rational(num + "/" + read_integer());
        return parse_rational(num);
    }

    std::string read_name() {
        skip_ws();
        std::size_t start = pos;
        auto ok_first = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
        auto ok_rest = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
        if (pos >= text.size() || !ok_first(text[pos]))
            fail("expected variable name");
        ++pos;
        while (pos < text.size() && ok_rest(text[pos]))
            ++pos;
        return text.substr(start, pos - start);
    }

    int read_exponent() {
        std::string digits = read_integer();
        try {
            return std::stoi(digits);
        } catch (const std::exception&) {
            fail("exponent out of range");
        }
    }

    Polynomial factor() {
        std::size_t n = names.size();
        char c = peek();
        if (c == '(') {
            eat('(');
            Polynomial inner = expression();
            if (!eat(')'))
                fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return Polynomial::constant(n, read_rational());
        std::string name = read_name();
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end())
            fail("unknown variable '" + name + "'");
        Polynomial v = Polynomial::variable(n, static_cast<std::size_t>(it - names.begin()));
        if (eat('^'))
            return v.pow(read_exponent());
        return v;
    }

    Polynomial term() {
        Polynomial r = factor();
        while (eat('*'))
            r *= factor();
        return r;
    }

    Polynomial expression() {
        Polynomial r(names.size());
        bool negate = false;
        if (eat('-'))
            negate = true;
        else
            eat('+');
        Polynomial t = term();
        r += negate ? -t : t;
        for (;;) {
            char c = peek();
            if (c == '+' || c == '-') {
                eat(c);
                Polynomial u = term();
                r += (c == '-') ? -u : u;
            } else {
                break;
            }
        }
        return r;
    }
};

} // namespace

Polynomial Polynomial::parse(const std::string& text, const std::vector<std::string>& names) {
    PolyParser p{text, names};
    Polynomial r = p.expression();
    p.skip_ws();
    if (p.pos != text.size())
        p.fail("trailing input");
    return r;
}

} // namespace eoq
