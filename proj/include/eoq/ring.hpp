#pragma once

#include "eoq/polynomial.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace eoq {

/**
 * A localized polynomial ring over Q: ordered named variables plus a fixed
 * finite list of inverted generators (nonconstant polynomials in those
 * variables). Elements are fractions whose denominators are monomials in
 * the generators, tracked as one exponent per generator.
 *
 * Convention: the distinguished parameter variable is named "T" and sits
 * last whenever present; fresh variables are inserted just before it.
 */
struct RingDescriptor {
    std::vector<std::string> variables;
    std::vector<Polynomial> inverted;

    std::size_t nvars() const { return variables.size(); }
    std::optional<std::size_t> index_of(const std::string& name) const;
    std::optional<std::size_t> generator_index(const Polynomial& g) const;
    bool operator==(const RingDescriptor& o) const;
    std::string var_name(std::size_t i) const { return variables.at(i); }
};

using RingPtr = std::shared_ptr<const RingDescriptor>;

// Validates and freezes a descriptor. Throws std::invalid_argument on
// duplicate names, bad generator polynomials, or a misplaced "T".
RingPtr make_ring(std::vector<std::string> variables, std::vector<Polynomial> inverted = {});

// Derived descriptors.
RingPtr with_variable(const RingPtr& ring, const std::string& name);
RingPtr with_generator(const RingPtr& ring, const Polynomial& g);
RingPtr without_generators(const RingPtr& ring);

bool same_ring(const RingPtr& a, const RingPtr& b);

/**
 * Element of a localized polynomial ring: numerator polynomial over the
 * descriptor's variables, denominator = product of generator powers given
 * by an exponent vector. Arithmetic results are normalized (generator
 * powers cancelled when the generator divides the numerator exactly);
 * directly constructed elements keep their literal representation.
 * Equality is by cross multiplication, so it is representation-free.
 */
class RingElement {
public:
    RingElement() = default;

    static RingElement from(RingPtr ring, Polynomial num, std::vector<int> den);
    static RingElement from_polynomial(RingPtr ring, Polynomial num);
    static RingElement constant(const RingPtr& ring, const Rational& c);
    static RingElement variable(const RingPtr& ring, const std::string& name);
    static RingElement zero(const RingPtr& ring);
    static RingElement one(const RingPtr& ring);

    bool valid() const { return ring_ != nullptr; }
    const RingPtr& ring() const { return ring_; }
    const Polynomial& numerator() const { return num_; }
    const std::vector<int>& denominator_exponents() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }

    RingElement operator-() const;
    friend RingElement operator+(const RingElement& a, const RingElement& b);
    friend RingElement operator-(const RingElement& a, const RingElement& b);
    friend RingElement operator*(const RingElement& a, const RingElement& b);
    RingElement& operator+=(const RingElement& o) { return *this = *this + o; }
    RingElement& operator-=(const RingElement& o) { return *this = *this - o; }
    RingElement& operator*=(const RingElement& o) { return *this = *this * o; }
    friend RingElement operator*(const RingElement& a, const Rational& c);
    friend RingElement operator*(const Rational& c, const RingElement& a) { return a * c; }

    bool operator==(const RingElement& o) const;
    bool operator!=(const RingElement& o) const { return !(*this == o); }

    // Cancel generator powers that divide the numerator exactly.
    RingElement normalized() const;

    // Membership in the plain polynomial subring: the numerator after all
    // denominator exponents cancel, nullopt if some power does not divide.
    std::optional<Polynomial> integral() const;

    // Like integral(), but clears only generator `gen`; other exponents stay.
    std::optional<RingElement> cleared_of(std::size_t gen) const;

    std::string str() const;

private:
    RingPtr ring_;
    Polynomial num_;
    std::vector<int> den_;
};

// Embed into a larger descriptor: every source variable must exist in the
// target (by name) and every generator with nonzero exponent must appear in
// the target's inverted list (as a polynomial, after variable remapping).
RingElement lift(const RingElement& e, const RingPtr& target);

// Inverse of lift for representable elements: move to a descriptor with
// fewer generators/variables; throws if a nonzero exponent or variable has
// no home. Tries normalization first when an exponent would be stranded.
RingElement restrict_to(const RingElement& e, const RingPtr& target);

/**
 * One of the substitution homomorphisms of the artifact, prepared against a
 * fixed source descriptor:
 *
 *  - evaluate:        var := value      (value free of var; var is removed,
 *                     generators involving var must evaluate to nonzero
 *                     constants, which move into coefficients)
 *  - scale:           var := factor*var (factor free of var; generators
 *                     involving var must map onto listed generators)
 *  - replace:         var := value within the same variable list (value may
 *                     involve var; same generator condition as scale)
 *  - swap_to_inverse: var := 1/fresh    (Laurent view; the target inverts
 *                     `fresh` and the reciprocal images of the generators)
 *  - rename:          var renamed, nothing else changes
 *
 * apply() is an exact ring homomorphism into target().
 */
class Substitution {
public:
    enum class Kind { Evaluate, Scale, SwapToInverse, Rename };

    static Substitution evaluate(const RingPtr& src, const std::string& var, Polynomial value);
    static Substitution scale(const RingPtr& src, const std::string& var, Polynomial factor);
    static Substitution replace(const RingPtr& src, const std::string& var, Polynomial value);
    static Substitution swap_to_inverse(const RingPtr& src, const std::string& var,
                                        const std::string& fresh);
    static Substitution rename(const RingPtr& src, const std::string& var,
                               const std::string& fresh);

    Kind kind() const { return kind_; }
    const RingPtr& source() const { return source_; }
    const RingPtr& target() const { return target_; }

    RingElement apply(const RingElement& e) const;

private:
    Substitution() = default;

    Kind kind_ = Kind::Rename;
    RingPtr source_, target_;
    std::size_t var_ = 0;            // substituted variable, source index
    Polynomial payload_;             // evaluate: value; scale: factor*var
    std::vector<std::size_t> remap_; // source variable -> target variable

    // Per-generator bookkeeping (parallel to source `inverted`):
    // target slot, or constant factor for generators that die.
    struct GenImage {
        bool kept = false;
        std::size_t slot = 0;     // target generator index when kept
        Rational constant = 1;    // generator image value when not kept
        int swap_degree = 0;      // degree in var (swap bookkeeping)
    };
    std::vector<GenImage> gens_;
};

} // namespace eoq
