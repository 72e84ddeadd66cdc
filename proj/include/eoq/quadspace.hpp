#pragma once

#include "eoq/ring.hpp"

#include <cstddef>
#include <vector>

namespace eoq {

/**
 * Coordinates for the rank-(2n+1) quadratic module: a hyperbolic part with
 * basis x_1..x_n, y_1..y_n and one extra coordinate z, carrying the form
 *
 *   q(x, y, z) = sum_i x_i*y_i + z^2.
 *
 * Column-vector convention throughout: matrices act on the left, and in a
 * product M1*M2 the factor M2 is applied first.
 */
struct QuadSpace {
    std::size_t n = 0;

    std::size_t dim() const { return 2 * n + 1; }
    std::size_t xi(std::size_t i) const { return i; }         // i in [0, n)
    std::size_t yi(std::size_t i) const { return n + i; }     // i in [0, n)
    std::size_t zi() const { return 2 * n; }
};

using Vec = std::vector<RingElement>;

/** Dense matrix with entries in one localized ring. */
class Mat {
public:
    Mat() = default;
    Mat(RingPtr ring, std::size_t rows, std::size_t cols);

    static Mat identity(const RingPtr& ring, std::size_t n);

    const RingPtr& ring() const { return ring_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    RingElement& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const RingElement& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Mat transpose() const;
    friend Mat operator*(const Mat& a, const Mat& b);
    friend Vec operator*(const Mat& a, const Vec& v);
    bool operator==(const Mat& o) const;
    bool operator!=(const Mat& o) const { return !(*this == o); }
    bool is_identity() const;

    std::string str() const;

private:
    RingPtr ring_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<RingElement> a_;
};

// Entrywise moves between rings.
Mat lift(const Mat& m, const RingPtr& target);
Mat restrict_to(const Mat& m, const RingPtr& target);
Mat apply(const Substitution& s, const Mat& m);
Vec lift(const Vec& v, const RingPtr& target);
Vec restrict_to(const Vec& v, const RingPtr& target);
Vec apply(const Substitution& s, const Vec& v);
bool vec_eq(const Vec& a, const Vec& b);

// The form and its polarization b(u,v) = (q(u+v) - q(u) - q(v))/2.
RingElement quadratic_form(const QuadSpace& qs, const Vec& v);
RingElement bilinear(const QuadSpace& qs, const Vec& u, const Vec& v);

// Gram matrix of the polarization (off-diagonal 1/2 blocks, 1 in the z slot)
// and its inverse.
Mat gram_matrix(const QuadSpace& qs, const RingPtr& ring);
Mat gram_inverse(const QuadSpace& qs, const RingPtr& ring);

// M^t * B * M == B, i.e. M preserves the form.
bool is_isometry(const QuadSpace& qs, const Mat& m);

// Inverse of an isometry without elimination: B^{-1} * M^t * B.
Mat isometry_inverse(const QuadSpace& qs, const Mat& m);

// Isometry over a ring containing `var` that becomes the identity at var=0.
bool is_parameter_isometry(const QuadSpace& qs, const Mat& m, const std::string& var);

} // namespace eoq
