#include "stdquot/rational.hpp"

#include <cmath>
#include <sstream>

namespace stdquot {

namespace {

Integer parse_decimal_integer(std::string t, const std::string& whole) {
  bool neg = false;
  if (!t.empty() && (t[0] == '-' || t[0] == '+')) {
    neg = t[0] == '-';
    t.erase(t.begin());
  }
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
    throw ExactError("malformed rational literal '" + whole + "'");
  // a leading zero would select octal
  const auto nz = t.find_first_not_of('0');
  const Integer v(nz == std::string::npos ? std::string("0") : t.substr(nz));
  return neg ? Integer(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) throw ExactError("empty rational literal");
  try {
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
      const Integer p = parse_decimal_integer(s.substr(0, slash), s);
      const Integer q = parse_decimal_integer(s.substr(slash + 1), s);
      if (q == 0) throw ExactError("zero denominator in '" + s + "'");
      return Rational(p, q);
    }
    // decimal with optional exponent
    std::string mant = s;
    long exp10 = 0;
    const auto e = s.find_first_of("eE");
    if (e != std::string::npos) {
      mant = s.substr(0, e);
      exp10 = std::stol(s.substr(e + 1));
    }
    bool neg = false;
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
      neg = mant[0] == '-';
      mant.erase(mant.begin());
    }
    const auto dot = mant.find('.');
    if (dot != std::string::npos) {
      exp10 -= static_cast<long>(mant.size() - dot - 1);
      mant.erase(dot, 1);
    }
    if (mant.empty() || mant.find_first_not_of("0123456789") != std::string::npos)
      throw ExactError("malformed rational literal '" + s + "'");
    // a leading zero would select octal
    const auto nz = mant.find_first_not_of('0');
    Integer m(nz == std::string::npos ? std::string("0") : mant.substr(nz));
    Integer scale = 1;
    for (long i = 0; i < std::labs(exp10); ++i) scale *= 10;
    Rational r = exp10 >= 0 ? Rational(m * scale) : Rational(m, scale);
    return neg ? Rational(-r) : r;
  } catch (const ExactError&) {
    throw;
  } catch (const std::exception&) {
    throw ExactError("malformed rational literal '" + s + "'");
  }
}

std::string format_rational(const Rational& x) {
  const Integer d = denominator_of(x);
  if (d == 1) return numerator_of(x).str();
  return numerator_of(x).str() + "/" + d.str();
}

Integer numerator_of(const Rational& x) { return boost::multiprecision::numerator(x); }
Integer denominator_of(const Rational& x) { return boost::multiprecision::denominator(x); }

MatQ zero_matrix(Eigen::Index rows, Eigen::Index cols) { return MatQ::Zero(rows, cols); }
MatQ identity_matrix(Eigen::Index n) { return MatQ::Identity(n, n); }

MatG to_gauss(const MatQ& m) {
  MatG g(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) g(i, j) = GaussRational(m(i, j));
  return g;
}

MatQ diagonalizing_congruence(const MatQ& symmetric) {
  const Eigen::Index n = symmetric.rows();
  MatQ s = symmetric;
  MatQ p = MatQ::Identity(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (s(k, k) == 0) {
      // bring a nonzero diagonal entry to position k, or create one
      Eigen::Index j = k + 1;
      while (j < n && s(j, j) == 0) ++j;
      if (j < n) {
        s.row(k).swap(s.row(j));
        s.col(k).swap(s.col(j));
        p.col(k).swap(p.col(j));
      } else {
        j = k + 1;
        while (j < n && s(k, j) == 0) ++j;
        if (j == n) continue;  // row k is zero
        // e_k <- e_k + e_j makes the diagonal 2 s(k,j) != 0
        s.row(k) += s.row(j);
        s.col(k) += s.col(j);
        p.col(k) += p.col(j);
      }
    }
    for (Eigen::Index j = k + 1; j < n; ++j) {
      if (s(k, j) == 0) continue;
      const Rational f = s(k, j) / s(k, k);
      s.row(j) -= f * s.row(k);
      s.col(j) -= f * s.col(k);
      p.col(j) -= f * p.col(k);
    }
  }
  return p;
}

Signature signature(const MatQ& symmetric) {
  const MatQ p = diagonalizing_congruence(symmetric);
  const MatQ d = p.transpose() * symmetric * p;
  Signature sig;
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    if (d(i, i) > 0)
      ++sig.positive;
    else if (d(i, i) < 0)
      ++sig.negative;
    else
      ++sig.zero;
  }
  return sig;
}

Rational rationalize(double x, std::int64_t max_den) {
  // continued fraction convergents
  const bool neg = x < 0;
  double v = std::fabs(x);
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  for (int it = 0; it < 64; ++it) {
    const double a = std::floor(v);
    const auto ai = static_cast<std::int64_t>(a);
    const std::int64_t h2 = ai * h1 + h0;
    const std::int64_t k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    const double frac = v - a;
    if (frac < 1e-12) break;
    v = 1.0 / frac;
  }
  Rational r(h1, k1 == 0 ? 1 : k1);
  return neg ? Rational(-r) : r;
}

}  // namespace stdquot
