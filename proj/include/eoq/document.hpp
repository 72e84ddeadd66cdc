#pragma once

#include "eoq/pipeline.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace eoq {

/**
 * On-disk exchange format, versioned "eoq-doc/1": a single JSON object
 * carrying a ring descriptor, one payload, and a free-form string map.
 * Payload kinds:
 *
 *   matrix      an isometry (or candidate) over the ring
 *   word        a generator word (letters carry their own parameters)
 *   point       one quadric point
 *   chain       a full certificate chain (links embed their own rings)
 *   instance    a family with its witness bundle
 *   polynomial  a list of ring elements (plain polynomials when the ring
 *               has no inverted generators)
 *
 * Documents are self-describing: embedded objects that live over a ring
 * other than the top-level one (chain links, bundle words) serialize that
 * ring inline, so a single file suffices for third-party re-verification.
 * A file holds either one document object or an array of documents.
 *
 * An optional comaximality certificate may ride along with any payload
 * (its polynomials read over the top-level ring's variables); patch jobs
 * use it to glue chart-local sections.
 */
struct Document {
    std::string kind;  // "matrix" | "word" | "point" | "chain" | "instance" | "polynomial"
    std::size_t n = 0; // hyperbolic rank of the ambient space (0 for polynomial docs)
    RingPtr ring;

    Mat matrix;
    GeneratorWord word;
    QuadricPoint point;
    CertificateChain chain;
    std::shared_ptr<MonicInstance> instance;
    Vec elements;

    std::optional<ComaximalCertificate> certificate;
    std::map<std::string, std::string> meta;
};

// Canonical JSON text; parse(serialize(d)) == d on canonical form.
std::string serialize_document(const Document& d);
std::string serialize_documents(const std::vector<Document>& ds);

// Throws ParseError on anything malformed (bad JSON, unknown fields of the
// wrong shape, letters violating their factory invariants, rings violating
// descriptor rules). parse_documents accepts one object or an array.
Document parse_document(const std::string& text);
std::vector<Document> parse_documents(const std::string& text);

// Payload factories.
Document matrix_document(std::size_t n, const Mat& m);
Document word_document(std::size_t n, const RingPtr& ring, const GeneratorWord& w);
Document point_document(std::size_t n, const QuadricPoint& pt);
Document chain_document(std::size_t n, const CertificateChain& c);
Document instance_document(std::size_t n, const MonicInstance& inst);
Document polynomial_document(const RingPtr& ring, Vec elements);

/**
 * The check appropriate to the payload, exactly: matrices must be
 * isometries (parameter isometries when the ring carries T), words must
 * evaluate to isometries, points must satisfy their quadric equation,
 * chains re-verify link by link, instances pass witness ingestion,
 * polynomial payloads have nothing to check. Throws VerifyError (or
 * WitnessError for instances) naming the first failure: entry indices and
 * the offending polynomial where applicable.
 */
void verify_document(const Document& d);

} // namespace eoq
