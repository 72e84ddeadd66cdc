#pragma once

#include "eoq/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace eoq {

// Exponent vector of a monomial; its length equals the variable count of
// the polynomial it belongs to.
using Exponents = std::vector<int>;

// The one term order used everywhere (leading terms, division, printing):
// lexicographic where *later* variables weigh more. Ring descriptors keep
// the distinguished parameter variable last, so it is always the greatest.
struct TermOrder {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

/**
 * Multivariate polynomial over Q with a fixed positional variable space.
 * Variable names live in the ring descriptor, not here. Terms are kept
 * sorted under TermOrder with no explicit zero coefficients, so the
 * representation is canonical and equality is plain structural equality.
 */
class Polynomial {
public:
    using TermMap = std::map<Exponents, Rational, TermOrder>;

    explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

    static Polynomial constant(std::size_t nvars, const Rational& c);
    static Polynomial variable(std::size_t nvars, std::size_t index);
    static Polynomial monomial(std::size_t nvars, const Exponents& e, const Rational& c);

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_one() const;
    Rational constant_value() const; // requires is_constant()
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    int degree_in(std::size_t var) const; // -1 for the zero polynomial
    bool involves(std::size_t var) const;
    Rational coefficient(const Exponents& e) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial& operator*=(const Rational& c);
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
    bool operator==(const Polynomial& o) const;

    Polynomial pow(int k) const; // k >= 0

    // Substitute `value` (same variable space) for variable `var`.
    Polynomial compose(std::size_t var, const Polynomial& value) const;

    // Move into a variable space of `new_nvars` variables; map[i] gives the
    // new position of old variable i. The map must be injective.
    Polynomial remap(std::size_t new_nvars, const std::vector<std::size_t>& map) const;

    // Reciprocal polynomial in `var`: var^{deg} * p(1/var), i.e. the
    // coefficient sequence in `var` reversed. Identity when deg <= 0.
    Polynomial reciprocal_in(std::size_t var) const;

    // Dense coefficient list when no variable other than `var` occurs
    // (constants are fine); index = exponent. nullopt otherwise.
    std::optional<std::vector<Rational>> dense_univariate(std::size_t var) const;

    std::string str(const std::vector<std::string>& names) const;
    static Polynomial parse(const std::string& text, const std::vector<std::string>& names);

private:
    std::size_t nvars_;
    TermMap terms_;

    void add_term(const Exponents& e, const Rational& c);
    friend std::optional<Polynomial> exact_divide(const Polynomial& p, const Polynomial& q);
};

// Exact division: p/q when q divides p exactly, nullopt otherwise.
// Leading-term recursion under TermOrder; never returns a partial quotient.
std::optional<Polynomial> exact_divide(const Polynomial& p, const Polynomial& q);

} // namespace eoq
