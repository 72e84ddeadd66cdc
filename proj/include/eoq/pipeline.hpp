#pragma once

#include "eoq/patching.hpp"
#include "eoq/quadric.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace eoq {

/**
 * One step of a certified chain between quadric points. Every link carries
 * its endpoints; the witness is one of
 *
 *  - Word:     a generator word whose action carries `from` to `to`,
 *  - Matrix:   an explicit isometry doing the same,
 *  - Homotopy: a point family over a designated variable specializing to
 *              `from` at 0 and `to` at 1.
 *
 * Endpoints may live over smaller rings than the witness; comparisons
 * lift as needed.
 */
enum class LinkKind { Word, Matrix, Homotopy };

struct ChainLink {
    LinkKind kind = LinkKind::Word;
    QuadricPoint from, to;
    GeneratorWord word;           // Word
    Mat matrix;                   // Matrix
    HomotopyCertificate homotopy; // Homotopy
    std::string note;             // short human-readable label
};

struct CertificateChain {
    std::vector<ChainLink> links;
    std::string meta;

    const QuadricPoint& start() const { return links.front().from; }
    const QuadricPoint& finish() const { return links.back().to; }
};

/**
 * Re-verifies a chain from scratch: every endpoint on its quadric, every
 * witness honest for its own link, and consecutive links glued at equal
 * points. Uses only the form, the action, and exact arithmetic — nothing
 * from the chain's construction. Throws VerifyError naming the first
 * offending link.
 */
void verify_chain(const QuadSpace& qs, const CertificateChain& chain);

/**
 * Optional post-pass: an all-word chain concatenates (in act order) into a
 * single word over the start point's ring that carries start to finish.
 * Mixed chains do not collapse; the result is action-checked before return.
 */
GeneratorWord collapse_chain(const QuadSpace& qs, const CertificateChain& chain);

/**
 * Witness data accompanying a parameter family H over A[T]:
 *
 *  - sigma_g:         word over A[T] with g inverted carrying H to the
 *                     base point,
 *  - sigma_contract:  word over A[T] carrying the constant family H(0)
 *                     to H,
 *  - sigma_endpoints: word over A carrying H(0) to H(1).
 *
 * recursive_bundle is accepted for forward compatibility and not consumed:
 * the transform derives everything it needs from the three words.
 */
struct MonicInstance;

struct WitnessBundle {
    GeneratorWord sigma_g;
    GeneratorWord sigma_contract;
    GeneratorWord sigma_endpoints;
    std::shared_ptr<MonicInstance> recursive_bundle;
};

/**
 * A unit-level family with a monic direction: H is a point of the f(p)+z^2=1
 * quadric over A[T] (plain, T last), g is monic in T, and the bundle
 * witnesses H's relation to the base point after inverting g.
 */
struct MonicInstance {
    QuadricPoint H;
    Polynomial g;
    WitnessBundle bundle;
    std::string note;
};

// Leading coefficient 1 and every lower coefficient free to vary.
bool is_monic_in(const Polynomial& g, std::size_t var);

// Check every claim the bundle makes, exactly; throws WitnessError with the
// first failure. Nothing downstream trusts an instance that was not checked.
void ingest_verify(const QuadSpace& qs, const MonicInstance& inst);

/**
 * Chain for instances whose g is a power of T (so inverting g is inverting
 * T): walk H to H(0), across to H(1), then apply sigma_g at T=1, where the
 * inverted generator becomes the unit 1.
 */
CertificateChain base_case_T(const QuadSpace& qs, const MonicInstance& inst);

/**
 * The denominator-removal transform: from an instance over A[T] with g
 * inverted, produce a chain from H to the base point over A[T] itself —
 * every intermediate point constant over A. The g-denominators are traded
 * for a reciprocal-variable chart, the resulting family is factored over
 * the two charts, and the factors are glued into one global point family
 * that the chain walks as an honest homotopy. The returned chain is
 * re-verified from scratch before being handed out.
 */
CertificateChain monic_inversion_transform(const QuadSpace& qs, const MonicInstance& inst,
                                           int bound = -1);

/**
 * End-to-end run from orientation data over A[T]: build the unit-level
 * family, assemble a witness bundle — constructively for surjective-shape
 * data (s = 0, p = 0), from the supplied bundle otherwise (WitnessError
 * when data of general shape arrives without one) — and transform it into
 * a verified chain. The chain's meta records that the converse direction
 * is not claimed by this artifact.
 */
struct OrchestrationResult {
    MonicInstance instance;
    CertificateChain chain;
};

OrchestrationResult main_theorem_orchestration(const QuadSpace& qs, const OrientationDatum& o,
                                               const Polynomial& g,
                                               std::optional<WitnessBundle> bundle = {},
                                               int bound = -1);

/**
 * Deterministic planted instance: a hidden contracted word moves the base
 * point to H; the bundle is assembled from that word, with sigma_g padded
 * by base-point-fixing letters carrying honest g-denominators. Same seed,
 * same instance.
 */
MonicInstance plant_instance(std::uint64_t seed, const QuadSpace& qs, const RingPtr& base_ring,
                             const Polynomial& g, std::size_t len);

} // namespace eoq
