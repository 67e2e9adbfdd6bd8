// Exact scalar types and dense exact linear algebra.
//
// Everything in the exact core is expressed with Eigen dense matrices over
// `Rational` (GMP rationals) or `GaussRational` (Q(i)).  The elimination
// routines below are templated on the scalar and never compare against a
// tolerance.
#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stdquot {

using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;
using Integer =
    boost::multiprecision::number<boost::multiprecision::gmp_int,
                                  boost::multiprecision::et_off>;

/// Element of Q(i).
struct GaussRational {
  Rational re{0};
  Rational im{0};

  GaussRational() = default;
  GaussRational(int v) : re(v) {}  // NOLINT: implicit for Eigen literals
  GaussRational(Rational r) : re(std::move(r)) {}  // NOLINT
  GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  friend GaussRational operator+(const GaussRational& a, const GaussRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussRational operator-(const GaussRational& a, const GaussRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussRational operator-(const GaussRational& a) { return {-a.re, -a.im}; }
  friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussRational operator/(const GaussRational& a, const GaussRational& b) {
    Rational n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  GaussRational& operator+=(const GaussRational& o) { return *this = *this + o; }
  GaussRational& operator-=(const GaussRational& o) { return *this = *this - o; }
  GaussRational& operator*=(const GaussRational& o) { return *this = *this * o; }
  GaussRational& operator/=(const GaussRational& o) { return *this = *this / o; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }
};

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatQ = Mat<Rational>;
using VecQ = Vec<Rational>;
using MatG = Mat<GaussRational>;
using VecG = Vec<GaussRational>;

class ExactError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool is_zero(const Rational& x) { return x == 0; }
inline bool is_zero(const GaussRational& x) { return x.re == 0 && x.im == 0; }

/// Parses "p", "p/q" or a terminating decimal ("0.25", "-1e-3") into an exact rational.
Rational parse_rational(std::string_view text);
/// "p/q" or "p" when the denominator is one.
std::string format_rational(const Rational& x);

MatQ zero_matrix(Eigen::Index rows, Eigen::Index cols);
MatQ identity_matrix(Eigen::Index n);

/// Reduced row echelon form in place; returns the pivot columns.
template <typename Scalar>
std::vector<Eigen::Index> rref_in_place(Mat<Scalar>& m) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index p = row;
    while (p < m.rows() && is_zero(m(p, col))) ++p;
    if (p == m.rows()) continue;
    if (p != row) m.row(p).swap(m.row(row));
    const Scalar inv = Scalar(1) / m(row, col);
    for (Eigen::Index c = col; c < m.cols(); ++c)
      if (!is_zero(m(row, c))) m(row, c) *= inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      const Scalar f = m(r, col);
      for (Eigen::Index c = col; c < m.cols(); ++c)
        if (!is_zero(m(row, c))) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <typename Scalar>
Eigen::Index rank(Mat<Scalar> m) {
  return static_cast<Eigen::Index>(rref_in_place(m).size());
}

/// Basis of the right kernel, one vector per column.  The basis is the
/// canonical one read off the reduced echelon form: column k has a one in
/// free variable k and zeros in the other free variables.
template <typename Scalar>
Mat<Scalar> kernel(Mat<Scalar> m, std::vector<Eigen::Index>* free_vars = nullptr) {
  const Eigen::Index n = m.cols();
  const auto pivots = rref_in_place(m);
  std::vector<bool> is_pivot(static_cast<size_t>(n), false);
  for (auto p : pivots) is_pivot[static_cast<size_t>(p)] = true;
  std::vector<Eigen::Index> free;
  for (Eigen::Index c = 0; c < n; ++c)
    if (!is_pivot[static_cast<size_t>(c)]) free.push_back(c);
  Mat<Scalar> k = Mat<Scalar>::Zero(n, static_cast<Eigen::Index>(free.size()));
  for (size_t j = 0; j < free.size(); ++j) {
    const auto f = free[j];
    k(f, static_cast<Eigen::Index>(j)) = Scalar(1);
    for (size_t i = 0; i < pivots.size(); ++i)
      if (!is_zero(m(static_cast<Eigen::Index>(i), f)))
        k(pivots[i], static_cast<Eigen::Index>(j)) = -m(static_cast<Eigen::Index>(i), f);
  }
  if (free_vars) *free_vars = std::move(free);
  return k;
}

/// Column-space basis (a subset of the columns of `m`).
template <typename Scalar>
Mat<Scalar> column_basis(const Mat<Scalar>& m) {
  Mat<Scalar> w = m;
  const auto pivots = rref_in_place(w);
  Mat<Scalar> out(m.rows(), static_cast<Eigen::Index>(pivots.size()));
  for (size_t j = 0; j < pivots.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = m.col(pivots[j]);
  return out;
}

/// Inverse of a square matrix; throws if singular.
template <typename Scalar>
Mat<Scalar> inverse(const Mat<Scalar>& a) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw ExactError("inverse: matrix not square");
  Mat<Scalar> aug(n, 2 * n);
  aug.leftCols(n) = a;
  aug.rightCols(n) = Mat<Scalar>::Identity(n, n);
  const auto piv = rref_in_place(aug);
  if (static_cast<Eigen::Index>(piv.size()) < n || piv.back() >= n)
    throw ExactError("inverse: matrix is singular");
  return aug.rightCols(n);
}

/// Solves a * x = b for one particular x; returns false if inconsistent.
template <typename Scalar>
bool solve(const Mat<Scalar>& a, const Mat<Scalar>& b, Mat<Scalar>& x) {
  Mat<Scalar> aug(a.rows(), a.cols() + b.cols());
  aug.leftCols(a.cols()) = a;
  aug.rightCols(b.cols()) = b;
  const auto piv = rref_in_place(aug);
  x = Mat<Scalar>::Zero(a.cols(), b.cols());
  for (size_t i = 0; i < piv.size(); ++i) {
    if (piv[i] >= a.cols()) return false;
    x.row(piv[i]) = aug.row(static_cast<Eigen::Index>(i)).rightCols(b.cols());
  }
  return true;
}

/// Product that skips zero entries of both factors.  Exact matrices in this
/// project are mostly sparse, and GMP arithmetic dominates the cost.
template <typename Scalar>
Mat<Scalar> sparse_product(const Mat<Scalar>& a, const Mat<Scalar>& b) {
  Mat<Scalar> c = Mat<Scalar>::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (is_zero(a(i, k))) continue;
      const Scalar& aik = a(i, k);
      for (Eigen::Index j = 0; j < b.cols(); ++j)
        if (!is_zero(b(k, j))) c(i, j) += aik * b(k, j);
    }
  return c;
}

template <typename Scalar>
Mat<Scalar> commutator(const Mat<Scalar>& a, const Mat<Scalar>& b) {
  return sparse_product(a, b) - sparse_product(b, a);
}

template <typename Scalar>
bool is_zero_matrix(const Mat<Scalar>& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i)
    if (!is_zero(m.data()[i])) return false;
  return true;
}

MatG to_gauss(const MatQ& m);

/// Signature (positive, negative, zero) of a symmetric rational matrix via
/// exact symmetric elimination.
struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};
Signature signature(const MatQ& symmetric);

/// Congruence P with P^T S P diagonal (rational entries).
MatQ diagonalizing_congruence(const MatQ& symmetric);

/// Best rational approximation with denominator at most `max_den`.
Rational rationalize(double x, std::int64_t max_den);

Integer numerator_of(const Rational& x);
Integer denominator_of(const Rational& x);

}  // namespace stdquot

namespace Eigen {
template <>
struct NumTraits<stdquot::GaussRational> : GenericNumTraits<stdquot::GaussRational> {
  typedef stdquot::GaussRational Real;
  typedef stdquot::GaussRational NonInteger;
  typedef stdquot::GaussRational Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 8,
    MulCost = 32
  };
};
}  // namespace Eigen
