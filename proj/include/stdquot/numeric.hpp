// Configurable-precision floating point, kept apart from the exact core.
#pragma once

#include "stdquot/rational.hpp"

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace stdquot {

using Real = boost::multiprecision::mpfr_float;
using MatR = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using VecR = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

/// Working precision in decimal digits.  STDQUOT_PRECISION overrides the
/// default of 50 on first use.
unsigned precision_digits();
void set_precision_digits(unsigned digits);

/// RAII guard for temporarily changing the precision.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

Real to_real(const Rational& q);
MatR to_real(const MatQ& m);

Real max_abs(const MatR& m);
MatR expm(const MatR& a);
/// Principal logarithm; requires the spectrum away from the closed negative axis.
MatR logm(const MatR& a);
/// Numerical rank from singular values above tol * largest.
int numeric_rank(const MatR& m, const Real& tol);

}  // namespace stdquot
