#pragma once

#include "eoq/elementary.hpp"

#include <optional>

namespace eoq {

/**
 * Comaximality witness: polynomials with  a^ma * s + b^mb * r = 1.
 * The exponents may differ; bezout_certificate always produces ma == mb.
 */
struct ComaximalCertificate {
    Polynomial a, b;
    int ma = 1, mb = 1;
    Polynomial s, r;
};

bool verify_comaximal(const ComaximalCertificate& c);

/**
 * Certificate with ma = mb = m for comaximal a, b. Finds a base identity
 * a*s0 + b*r0 = 1 by exact division of 1-b by a (or 1-a by b), falling back
 * to the extended Euclidean algorithm when both inputs are univariate, then
 * raises it to the requested power through the binomial expansion of
 * (a*s0 + b*r0)^(2m-1). Throws VerifyError when no identity is found.
 */
ComaximalCertificate bezout_certificate(const Polynomial& a, const Polynomial& b, int m);

/**
 * Exact difference quotient of a one-parameter family of isometries along a
 * denominator: for sigma over a ring containing `tvar` and inverting `gen`,
 * form  tau = sigma(c*t) * sigma(d*t)^-1  (c, d free of tvar) and move it
 * into the same ring with `gen` no longer inverted. Throws VerifyError when
 * an entry keeps an honest `gen` denominator.
 */
Mat quillen_clear(const QuadSpace& qs, const Mat& sigma, const std::string& tvar,
                  const Polynomial& c, const Polynomial& d, const Polynomial& gen);

/**
 * Smallest N <= bound such that sigma(c*t) * sigma(d*t)^-1 clears `gen`
 * whenever c == d mod gen^N, probed with fresh symbolic coefficients so one
 * check covers all specializations. Default bound: twice the largest `gen`
 * exponent in sigma's denominators, plus two. nullopt when none works.
 */
std::optional<int> minimal_clearing_exponent(const QuadSpace& qs, const Mat& sigma,
                                             const std::string& tvar, const Polynomial& gen,
                                             int bound = -1);

/**
 * Two-chart factorization of a family: for an isometry sigma(t) with
 * sigma(0) = Id over a ring inverting comaximal a and b,
 *
 *   beta  = sigma(a^m*s*t)              lives without the a-denominator,
 *   alpha = sigma(t) * beta^-1          lives without the b-denominator,
 *
 * with m taken large enough for both clearings and (s, r) the matching
 * certificate. alpha * beta = sigma exactly, alpha(0) = beta(0) = Id.
 * Throws BoundError when no clearing exponent is found within the bound.
 */
struct SplitMatrices {
    Mat alpha; // over the ring without b inverted
    Mat beta;  // over the ring without a inverted
    ComaximalCertificate cert;
};

SplitMatrices split_sigma_T(const QuadSpace& qs, const Mat& sigma, const std::string& tvar,
                            const Polynomial& a, const Polynomial& b, int bound = -1);

/**
 * Chart factorization of a single isometry given as a word: beta is the
 * word's one-parameter contraction evaluated at a^m * s (so its letters
 * clear their a-denominators outright), alpha the exact quotient against
 * the word's matrix. alpha * beta equals the word's matrix by
 * construction, alpha without b-denominators, beta without
 * a-denominators — both membership claims checked by restriction.
 */
struct SplitResult {
    Mat alpha;
    Mat beta;
    ComaximalCertificate cert;
};

SplitResult split_sigma(const QuadSpace& qs, const RingPtr& ring, const GeneratorWord& w,
                        const Polynomial& a, const Polynomial& b, int bound = -1);

/**
 * Glue two chart sections into a global element: ea has denominators only
 * in cert.a, eb only in cert.b, and they agree on the overlap. The result
 * e = s*a^(ma-m1)*p + r*b^(mb-k1)*q (literal exponents m1, k1 after
 * normalization) satisfies e = ea and e = eb in the respective charts, and
 * is independent of the certificate used. Throws VerifyError when the
 * sections disagree.
 */
Polynomial patch_element(const RingElement& ea, const RingElement& eb,
                         const ComaximalCertificate& cert);

// Entrywise patch_element; the results are read into `target`.
Vec patch_vector(const Vec& va, const Vec& vb, const ComaximalCertificate& cert,
                 const RingPtr& target);

} // namespace eoq
