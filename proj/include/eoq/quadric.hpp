#pragma once

#include "eoq/elementary.hpp"

#include <string>
#include <utility>

namespace eoq {

/**
 * Points of the two affine quadrics attached to (M, q):
 *
 *   Q : f(p) = s(1-s)        (coordinates (p, f, s), base point (0,0,0))
 *   Q': f(p) + z^2 = 1       (coordinates (p, f, z), base point (0,0,1))
 *
 * where f(p) is the pairing sum f_i * p_i. The Q' equation is exactly
 * q(p,f,z) = 1, so isometries act on Q' points. The sign convention on Q is
 * the one under which (p,f,s) |-> (2p, 2f, 1-2s) lands in Q':
 * (2f)(2p) + (1-2s)^2 = 4s(1-s) + 1 - 4s + 4s^2 = 1.
 */
enum class Variant { Q, QPrime };

struct QuadricPoint {
    Variant variant = Variant::QPrime;
    Vec p, f;         // length n each
    RingElement last; // s for Q, z for Q'

    std::size_t n() const { return p.size(); }
    const RingPtr& ring() const { return last.ring(); }
    Vec coords() const;                                      // (p, f, last)
    static QuadricPoint from_coords(Variant variant, const Vec& v);
    std::string str() const;
};

QuadricPoint base_point(const QuadSpace& qs, const RingPtr& ring, Variant variant);

// Defining equation's defect: zero exactly when the point lies on its quadric.
RingElement membership_defect(const QuadricPoint& pt);
bool q_membership(const QuadricPoint& pt);

// The mutually inverse base-point-preserving bijections Q <-> Q'.
QuadricPoint q_to_qprime(const QuadricPoint& pt);  // (p,f,s) -> (2p, 2f, 1-2s)
QuadricPoint qprime_to_q(const QuadricPoint& pt);  // (p,f,z) -> (p/2, f/2, (1-z)/2)

// Left action of a word on a Q' point (the rightmost letter acts first).
QuadricPoint act(const QuadSpace& qs, const GeneratorWord& w, const QuadricPoint& pt);
QuadricPoint act(const QuadSpace& qs, const Mat& m, const QuadricPoint& pt);

// Entrywise moves between rings.
QuadricPoint lift(const QuadricPoint& pt, const RingPtr& target);
QuadricPoint restrict_to(const QuadricPoint& pt, const RingPtr& target);
QuadricPoint apply(const Substitution& s, const QuadricPoint& pt);

// Equality after lifting both points into `ambient`.
bool point_eq(const QuadricPoint& a, const QuadricPoint& b, const RingPtr& ambient);

// Equality across descriptors: moves one point into the other's ring
// (lifting or restricting, whichever applies); false when neither works.
bool point_eq(const QuadricPoint& a, const QuadricPoint& b);

/**
 * One homotopy: a quadric point family over a ring containing a designated
 * variable, plus its recorded specializations at 0 and 1. A certificate is
 * valid when the family satisfies its quadric equation identically and the
 * recorded endpoints match the actual specializations.
 */
struct HomotopyCertificate {
    QuadricPoint family;
    std::string var;
    QuadricPoint end0, end1;
};

// Build a certificate from a family, computing the endpoints.
HomotopyCertificate make_homotopy(const QuadricPoint& family, const std::string& var);

// True iff the family lies on the quadric identically and specializes to
// v0 at var=0 and v1 at var=1 (compared after lifting into the family's
// specialized ring).
bool verify_homotopy(const HomotopyCertificate& h, const QuadricPoint& v0,
                     const QuadricPoint& v1);
bool verify_homotopy(const HomotopyCertificate& h);

// The same path walked backwards: var |-> 1 - var, endpoints swapped.
HomotopyCertificate reverse_homotopy(const HomotopyCertificate& h);

// For a point H over a ring whose last variable is `tvar`: the certificate
// G(t, w) = H(t*w), connecting the constant family H(0) to H itself.
HomotopyCertificate contract_parameter(const QuadricPoint& H, const std::string& tvar = "T",
                                       const std::string& wvar = "W");

/**
 * Orientation data for an ideal given by n generators and an s with
 * s(1-s) in the generator ideal, witnessed by an explicit p: the triple
 * satisfies f(p) = s(1-s) exactly and therefore sits on Q.
 */
struct OrientationDatum {
    Vec f;
    RingElement s;
    Vec p;

    std::size_t n() const { return f.size(); }
    const RingPtr& ring() const { return s.ring(); }
};

// The Q-point (p, f, s) together with its image in Q'. Throws WitnessError
// when the witness identity fails.
std::pair<QuadricPoint, QuadricPoint> orientation_to_point(const OrientationDatum& o);

// For data of surjective-lift shape (s = 0, p = 0): the certificate
// (0, 2(1-W)f, 1) connecting the Q'-image (0, 2f, 1) to the base point.
HomotopyCertificate surjection_certificate(const OrientationDatum& o,
                                           const std::string& wvar = "W");

} // namespace eoq
