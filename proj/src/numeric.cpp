#include "stdquot/numeric.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <cstdlib>
#include <mutex>
#include <string>

namespace stdquot {

namespace {

std::once_flag env_once;

void init_from_env() {
  std::call_once(env_once, [] {
    unsigned digits = 50;
    if (const char* s = std::getenv("STDQUOT_PRECISION")) {
      try {
        const long v = std::stol(s);
        if (v >= 16 && v <= 2000) digits = static_cast<unsigned>(v);
      } catch (const std::exception&) {
      }
    }
    Real::default_precision(digits);
  });
}

const bool env_initialized = (init_from_env(), true);

}  // namespace

unsigned precision_digits() {
  init_from_env();
  return Real::default_precision();
}

void set_precision_digits(unsigned digits) {
  init_from_env();
  Real::default_precision(digits);
}

PrecisionScope::PrecisionScope(unsigned digits) : saved_(precision_digits()) { set_precision_digits(digits); }
PrecisionScope::~PrecisionScope() { set_precision_digits(saved_); }

Real to_real(const Rational& q) {
  init_from_env();
  return Real(numerator_of(q).str()) / Real(denominator_of(q).str());
}

MatR to_real(const MatQ& m) {
  MatR r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = to_real(m(i, j));
  return r;
}

Real max_abs(const MatR& m) {
  Real best = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const Real a = abs(m(i, j));
      if (a > best) best = a;
    }
  return best;
}

MatR expm(const MatR& a) {
  init_from_env();
  const auto n = a.rows();
  int squarings = 0;
  Real norm = max_abs(a) * n;
  while (norm > Real(0.5)) {
    norm /= 2;
    ++squarings;
  }
  const MatR x = a / pow(Real(2), squarings);
  MatR term = MatR::Identity(n, n);
  MatR sum = term;
  const Real eps = pow(Real(10), -static_cast<int>(precision_digits()) - 5);
  for (int k = 1; k < 1000; ++k) {
    term = (term * x) / Real(k);
    sum += term;
    if (max_abs(term) < eps) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

MatR logm(const MatR& a) {
  init_from_env();
  const auto n = a.rows();
  const MatR id = MatR::Identity(n, n);
  MatR y = a;
  int roots = 0;
  // Denman-Beavers square roots until y is close to the identity
  while (max_abs(y - id) > Real(0.1)) {
    if (roots > 60) throw ExactError("logm: no convergence of square roots");
    MatR p = y, q = id;
    for (int it = 0; it < 200; ++it) {
      const MatR pi = p.fullPivLu().inverse();
      const MatR qi = q.fullPivLu().inverse();
      const MatR pn = (p + qi) / 2;
      q = (q + pi) / 2;
      const Real delta = max_abs(pn - p);
      p = pn;
      if (delta < pow(Real(10), -static_cast<int>(precision_digits()))) break;
    }
    y = p;
    ++roots;
  }
  const MatR x = y - id;
  MatR power = x;
  MatR sum = MatR::Zero(n, n);
  const Real eps = pow(Real(10), -static_cast<int>(precision_digits()) - 5);
  for (int k = 1; k < 5000; ++k) {
    const MatR term = power / Real(k);
    if (k % 2 == 1)
      sum += term;
    else
      sum -= term;
    if (max_abs(term) < eps) break;
    power = power * x;
  }
  return sum * pow(Real(2), roots);
}

int numeric_rank(const MatR& m, const Real& tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<MatR> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * s(0)) ++r;
  return r;
}

}  // namespace stdquot
