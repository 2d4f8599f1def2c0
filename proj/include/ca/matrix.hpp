#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ca/errors.hpp"
#include "ca/scalar.hpp"

namespace ca {

// Exact rational scalar for Eigen matrices.  boost's cpp_rational cannot be
// used as an Eigen scalar directly: its constructor templates are not
// SFINAE-friendly, so std::is_convertible<Expr, cpp_rational> is a hard
// error for Eigen expression types.  Wrapping the value behind non-template
// constructors keeps every convertibility probe well-formed.
class Rq {
public:
    Rq() = default;
    Rq(int v) : v_(v) {}         // NOLINT: implicit for literals
    Rq(const Rat& v) : v_(v) {}  // NOLINT: implicit for interop
    Rq(int num, int den);

    const Rat& value() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    Rq operator-() const {
        Rq out;
        out.v_ = -v_;
        return out;
    }
    Rq& operator+=(const Rq& o) {
        v_ += o.v_;
        return *this;
    }
    Rq& operator-=(const Rq& o) {
        v_ -= o.v_;
        return *this;
    }
    Rq& operator*=(const Rq& o) {
        v_ *= o.v_;
        return *this;
    }
    Rq& operator/=(const Rq& o) {
        if (o.v_ == 0) throw DivisionByZero();
        v_ /= o.v_;
        return *this;
    }
    friend Rq operator+(Rq a, const Rq& b) { return a += b; }
    friend Rq operator-(Rq a, const Rq& b) { return a -= b; }
    friend Rq operator*(Rq a, const Rq& b) { return a *= b; }
    friend Rq operator/(Rq a, const Rq& b) { return a /= b; }
    friend bool operator==(const Rq& a, const Rq& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rq& a, const Rq& b) { return a.v_ != b.v_; }

private:
    Rat v_;
};

inline Rq::Rq(int num, int den) : v_(num) {
    if (den == 0) throw DivisionByZero();
    v_ /= den;
}

inline std::ostream& operator<<(std::ostream& os, const Rq& q) { return os << q.value(); }

}  // namespace ca

namespace Eigen {

template <>
struct NumTraits<ca::Rq> {
    using Real = ca::Rq;
    using NonInteger = ca::Rq;
    using Literal = ca::Rq;
    using Nested = ca::Rq;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 16,
        MulCost = 16
    };
    static ca::Rq epsilon() { return ca::Rq(); }
    static ca::Rq dummy_precision() { return ca::Rq(); }
    static int digits10() { return 0; }
};

}  // namespace Eigen

namespace ca {

using SMat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using SVec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using QMat = Eigen::Matrix<Rq, Eigen::Dynamic, Eigen::Dynamic>;
using QVec = Eigen::Matrix<Rq, Eigen::Dynamic, 1>;

inline bool exactly_zero(const Scalar& s) { return s.is_zero(); }
inline bool exactly_zero(const Rat& r) { return r == 0; }
inline bool exactly_zero(const Rq& r) { return r.is_zero(); }

template <typename Mat>
bool is_zero_matrix(const Mat& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (!exactly_zero(m(i, j))) return false;
    return true;
}

// In-place reduced row echelon form by exact elimination (first nonzero pivot).
// Returns the pivot column indices.
template <typename Mat>
std::vector<int> rref_in_place(Mat& m) {
    using S = typename Mat::Scalar;
    std::vector<int> pivots;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
        Eigen::Index piv = -1;
        for (Eigen::Index i = row; i < m.rows(); ++i) {
            if (!exactly_zero(m(i, col))) {
                piv = i;
                break;
            }
        }
        if (piv < 0) continue;
        if (piv != row) m.row(piv).swap(m.row(row));
        S inv = S(1) / m(row, col);
        m.row(row) *= inv;
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (i == row || exactly_zero(m(i, col))) continue;
            S f = m(i, col);
            m.row(i) -= f * m.row(row);
        }
        pivots.push_back(static_cast<int>(col));
        ++row;
    }
    return pivots;
}

template <typename Mat>
Mat rref(Mat m) {
    rref_in_place(m);
    return m;
}

template <typename Mat>
int rank(Mat m) {
    return static_cast<int>(rref_in_place(m).size());
}

// Exact inverse by Gauss-Jordan; throws SingularMetric when not invertible.
template <typename Mat>
Mat exact_inverse(const Mat& a) {
    using S = typename Mat::Scalar;
    if (a.rows() != a.cols()) throw ShapeMismatch("inverse of a non-square matrix");
    Eigen::Index n = a.rows();
    Mat work(n, 2 * n);
    work.leftCols(n) = a;
    work.rightCols(n).setZero();
    for (Eigen::Index i = 0; i < n; ++i) work(i, n + i) = S(1);
    auto pivots = rref_in_place(work);
    if (static_cast<Eigen::Index>(pivots.size()) != n || pivots.back() >= n)
        throw SingularMetric();
    return work.rightCols(n);
}

// Basis of the kernel of a (columns x of a with a x = 0), as matrix columns.
template <typename Mat>
Mat kernel_basis(Mat a) {
    using S = typename Mat::Scalar;
    Eigen::Index nc = a.cols();
    auto pivots = rref_in_place(a);
    std::vector<bool> is_pivot(nc, false);
    for (int p : pivots) is_pivot[p] = true;
    Eigen::Index nfree = nc - static_cast<Eigen::Index>(pivots.size());
    Mat out(nc, nfree);
    out.setZero();
    Eigen::Index k = 0;
    for (Eigen::Index j = 0; j < nc; ++j) {
        if (is_pivot[j]) continue;
        out(j, k) = S(1);
        for (size_t r = 0; r < pivots.size(); ++r) out(pivots[r], k) = -a(static_cast<Eigen::Index>(r), j);
        ++k;
    }
    return out;
}

// Rows of `rows` reduced to a canonical spanning set (RREF, zero rows dropped).
template <typename Mat>
Mat canonical_rowspace(Mat rows) {
    auto pivots = rref_in_place(rows);
    Mat out(static_cast<Eigen::Index>(pivots.size()), rows.cols());
    for (Eigen::Index i = 0; i < out.rows(); ++i) out.row(i) = rows.row(i);
    return out;
}

// Intersection of two row spaces, canonical rows.
template <typename Mat>
Mat rowspace_intersection(const Mat& a, const Mat& b) {
    // x = u^t a = v^t b; solve [a^t  -b^t] [u;v] = 0.
    Mat sys(a.cols(), a.rows() + b.rows());
    sys.leftCols(a.rows()) = a.transpose();
    sys.rightCols(b.rows()) = -b.transpose();
    Mat ker = kernel_basis(sys);
    Mat out(ker.cols(), a.cols());
    for (Eigen::Index k = 0; k < ker.cols(); ++k)
        out.row(k) = (a.transpose() * ker.col(k).head(a.rows())).transpose();
    return canonical_rowspace(out);
}

// Membership of v (row vector) in the row space of m.
template <typename Mat, typename Vec>
bool in_rowspace(const Mat& m, const Vec& v) {
    Mat stacked(m.rows() + 1, m.cols());
    stacked.topRows(m.rows()) = m;
    stacked.row(m.rows()) = v;
    return rank(stacked) == rank(Mat(m));
}

}  // namespace ca
