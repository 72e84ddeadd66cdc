#pragma once

#include "eoq/quadspace.hpp"

#include <random>
#include <string>
#include <vector>

namespace eoq {

/**
 * Elementary isometries of (M, q), q = sum x_i*y_i + z^2, given by closed
 * forms. Two families:
 *
 *  - transvection types T1..T5 with one ring parameter (T1/T2 need one
 *    hyperbolic index, T3/T4/T5 a pair of distinct indices);
 *  - vector types EA/EB with a length-n parameter vector, plus the
 *    commutator types CAB/CAA/CBB with two parameter vectors, which stand
 *    for the corresponding commutator of vector-type letters (CAB requires
 *    the plain dot product of its vectors to vanish).
 *
 * Commutator convention: [g, h] = g^-1 h^-1 g h, composed left to right as
 * matrices acting on column vectors (the rightmost factor acts first).
 */
enum class GenKind { T1, T2, T3, T4, T5, EA, EB, CAB, CAA, CBB };

struct Generator {
    GenKind kind = GenKind::T1;
    std::size_t i = 0, j = 0; // hyperbolic indices for T types (0-based)
    RingElement param;        // T types
    Vec u, v;                 // vector types (v only for CAB/CAA/CBB)

    static Generator t1(std::size_t i, RingElement lambda);
    static Generator t2(std::size_t i, RingElement lambda);
    static Generator t3(std::size_t i, std::size_t j, RingElement lambda);
    static Generator t4(std::size_t i, std::size_t j, RingElement lambda);
    static Generator t5(std::size_t i, std::size_t j, RingElement lambda);
    static Generator ea(Vec u);
    static Generator eb(Vec u);
    static Generator cab(Vec u, Vec v); // requires sum_i u_i*v_i == 0
    static Generator caa(Vec u, Vec v);
    static Generator cbb(Vec u, Vec v);

    const RingPtr& ring() const;
    bool is_transvection() const;
    bool is_commutator_tag() const;
    std::string str(const QuadSpace& qs) const;
};

// A generator or its inverse.
struct Letter {
    Generator gen;
    int exp = 1; // +1 or -1
};

using GeneratorWord = std::vector<Letter>;

// Matrix of one letter over the letter's own ring (inverses via the
// parameter flips lambda -> -lambda, u -> -u, v -> -v).
Mat letter_matrix(const QuadSpace& qs, const Letter& l);
Mat generator_matrix(const QuadSpace& qs, const Generator& g);

// Product of the letters' matrices in word order; the LAST letter acts
// first on column vectors. The ring must be supplied for the empty word.
Mat evaluate_word(const QuadSpace& qs, const RingPtr& ring, const GeneratorWord& w);

// evaluate_word(w) * v, computed letter by letter.
Vec act_word(const QuadSpace& qs, const GeneratorWord& w, const Vec& v);

GeneratorWord inverse_word(const GeneratorWord& w);
GeneratorWord concat(const GeneratorWord& a, const GeneratorWord& b);

/**
 * Cancel adjacent inverse pairs and drop letters that act trivially
 * (zero transvection parameter, zero vector). The matrix is unchanged;
 * the point is to keep downstream symbolic work proportional to the
 * word's essential length, not its written length.
 */
GeneratorWord free_reduce(const GeneratorWord& w);

/**
 * Multiply every letter parameter by c, commutator tags expanded first so
 * the scaling acts on honest generators. Evaluating the result equals
 * evaluating the word's one-parameter contraction at parameter c; in
 * particular c = 1 reproduces the word's matrix and c = 0 the identity.
 */
GeneratorWord scale_word_params(const GeneratorWord& w, const RingElement& c);

// Entrywise moves of all parameters.
GeneratorWord lift(const GeneratorWord& w, const RingPtr& target);
GeneratorWord apply(const Substitution& s, const GeneratorWord& w);

std::string word_str(const QuadSpace& qs, const GeneratorWord& w);

enum class Side { A, B };
enum class DecomposeMode {
    Strict, // commutators spelled out as four-letter words
    Lazy    // commutators kept as single CAA/CBB tags
};

/**
 * Word of T1-type letters (side A; T2 for side B) plus commutator
 * corrections whose product equals the matrix of EA(a) (resp. EB(a)).
 * Peeling one coordinate at a time: the one-coordinate vector IS a
 * transvection, and the two-summand split costs one commutator.
 */
GeneratorWord decompose_to_transvections(const QuadSpace& qs, Side side, const Vec& a,
                                         DecomposeMode mode);

/**
 * Contract a word to the identity along a fresh parameter: every letter's
 * parameters are scaled by `var` (new last variable of the target ring),
 * commutator tags first expanded into their four-letter words so the scaled
 * word stays a word in honest generators. At var=0 the result's matrix is
 * the identity; at var=1 it is the original word's matrix.
 */
GeneratorWord homotopize(const QuadSpace& qs, const GeneratorWord& w,
                         const std::string& var = "T");

// Expand every CAB/CAA/CBB tag into its defining four-letter commutator
// word; other letters pass through.
GeneratorWord expand_commutator_tags(const GeneratorWord& w);

/**
 * Random words for gluing and for randomized checks: small integral
 * parameters (degree <= 1 in each variable, coefficients in [-2, 2]).
 * CAB tags are emitted with disjoint supports so the dot constraint holds.
 */
Generator random_generator(const QuadSpace& qs, const RingPtr& ring, std::mt19937_64& rng);
GeneratorWord random_word(const QuadSpace& qs, const RingPtr& ring, std::mt19937_64& rng,
                          std::size_t len);

} // namespace eoq
