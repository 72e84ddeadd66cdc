#include "eoq/quadspace.hpp"

#include <sstream>
#include <stdexcept>

namespace eoq {

Mat::Mat(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols) {
    a_.assign(rows_ * cols_, RingElement::zero(ring_));
}

Mat Mat::identity(const RingPtr& ring, std::size_t n) {
    Mat m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.at(i, i) = RingElement::one(ring);
    return m;
}

Mat Mat::transpose() const {
    Mat m(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            m.at(j, i) = at(i, j);
    return m;
}

Mat operator*(const Mat& a, const Mat& b) {
    if (!same_ring(a.ring_, b.ring_) || a.cols_ != b.rows_)
        throw std::invalid_argument("matrix product shape/ring mismatch");
    Mat m(a.ring_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < b.cols_; ++j) {
            RingElement s = RingElement::zero(a.ring_);
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const RingElement& x = a.at(i, k);
                const RingElement& y = b.at(k, j);
                if (x.is_zero() || y.is_zero())
                    continue;
                s += x * y;
            }
            m.at(i, j) = std::move(s);
        }
    return m;
}

Vec operator*(const Mat& a, const Vec& v) {
    if (a.cols_ != v.size())
        throw std::invalid_argument("matrix-vector shape mismatch");
    Vec r(a.rows_, RingElement::zero(a.ring_));
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (a.at(i, k).is_zero() || v[k].is_zero())
                continue;
            r[i] += a.at(i, k) * v[k];
        }
    return r;
}

bool Mat::operator==(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        return false;
    for (std::size_t i = 0; i < a_.size(); ++i)
        if (a_[i] != o.a_[i])
            return false;
    return true;
}

bool Mat::is_identity() const {
    if (rows_ != cols_)
        return false;
    RingElement one = RingElement::one(ring_);
    RingElement zero = RingElement::zero(ring_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != (i == j ? one : zero))
                return false;
    return true;
}

std::string Mat::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        os << "[ ";
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j)
                os << ", ";
            os << at(i, j).str();
        }
        os << " ]\n";
    }
    return os.str();
}

Mat lift(const Mat& m, const RingPtr& target) {
    Mat r(target, m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r.at(i, j) = lift(m.at(i, j), target);
    return r;
}

Mat restrict_to(const Mat& m, const RingPtr& target) {
    Mat r(target, m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r.at(i, j) = restrict_to(m.at(i, j), target);
    return r;
}

Mat apply(const Substitution& s, const Mat& m) {
    Mat r(s.target(), m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r.at(i, j) = s.apply(m.at(i, j));
    return r;
}

Vec lift(const Vec& v, const RingPtr& target) {
    Vec r;
    r.reserve(v.size());
    for (const auto& e : v)
        r.push_back(lift(e, target));
    return r;
}

Vec restrict_to(const Vec& v, const RingPtr& target) {
    Vec r;
    r.reserve(v.size());
    for (const auto& e : v)
        r.push_back(restrict_to(e, target));
    return r;
}

Vec apply(const Substitution& s, const Vec& v) {
    Vec r;
    r.reserve(v.size());
    for (const auto& e : v)
        r.push_back(s.apply(e));
    return r;
}

bool vec_eq(const Vec& a, const Vec& b) {
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i])
            return false;
    return true;
}

RingElement quadratic_form(const QuadSpace& qs, const Vec& v) {
    if (v.size() != qs.dim())
        throw std::invalid_argument("vector has wrong length for this space");
    const RingPtr& ring = v[0].ring();
    RingElement s = RingElement::zero(ring);
    for (std::size_t i = 0; i < qs.n; ++i)
        s += v[qs.xi(i)] * v[qs.yi(i)];
    s += v[qs.zi()] * v[qs.zi()];
    return s;
}

RingElement bilinear(const QuadSpace& qs, const Vec& u, const Vec& v) {
    if (u.size() != qs.dim() || v.size() != qs.dim())
        throw std::invalid_argument("vector has wrong length for this space");
    const RingPtr& ring = u[0].ring();
    Rational half(1, 2);
    RingElement s = RingElement::zero(ring);
    for (std::size_t i = 0; i < qs.n; ++i) {
        s += (u[qs.xi(i)] * v[qs.yi(i)]) * half;
        s += (u[qs.yi(i)] * v[qs.xi(i)]) * half;
    }
    s += u[qs.zi()] * v[qs.zi()];
    return s;
}

Mat gram_matrix(const QuadSpace& qs, const RingPtr& ring) {
    Mat b(ring, qs.dim(), qs.dim());
    RingElement half = RingElement::constant(ring, Rational(1, 2));
    for (std::size_t i = 0; i < qs.n; ++i) {
        b.at(qs.xi(i), qs.yi(i)) = half;
        b.at(qs.yi(i), qs.xi(i)) = half;
    }
    b.at(qs.zi(), qs.zi()) = RingElement::one(ring);
    return b;
}

Mat gram_inverse(const QuadSpace& qs, const RingPtr& ring) {
    Mat b(ring, qs.dim(), qs.dim());
    RingElement two = RingElement::constant(ring, Rational(2));
    for (std::size_t i = 0; i < qs.n; ++i) {
        b.at(qs.xi(i), qs.yi(i)) = two;
        b.at(qs.yi(i), qs.xi(i)) = two;
    }
    b.at(qs.zi(), qs.zi()) = RingElement::one(ring);
    return b;
}

bool is_isometry(const QuadSpace& qs, const Mat& m) {
    if (m.rows() != qs.dim() || m.cols() != qs.dim())
        return false;
    Mat b = gram_matrix(qs, m.ring());
    return m.transpose() * b * m == b;
}

Mat isometry_inverse(const QuadSpace& qs, const Mat& m) {
    if (m.rows() != qs.dim() || m.cols() != qs.dim())
        throw std::invalid_argument("matrix has wrong shape for this space");
    return gram_inverse(qs, m.ring()) * m.transpose() * gram_matrix(qs, m.ring());
}

bool is_parameter_isometry(const QuadSpace& qs, const Mat& m, const std::string& var) {
    if (!is_isometry(qs, m))
        return false;
    auto at0 = Substitution::evaluate(m.ring(), var,
                                      Polynomial::constant(m.ring()->nvars(), Rational(0)));
    return apply(at0, m).is_identity();
}

} // namespace eoq
