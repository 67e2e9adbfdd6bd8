#include "stdquot/bending.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace stdquot {

namespace {

// vectors below this norm are rounding noise at the working precision
constexpr double kNoiseFloor = 1e-30;

class NumericSpan {
 public:
  NumericSpan(Eigen::Index length, double threshold) : length_(length), threshold_(threshold) {}

  bool add(const VecR& v) {
    const Real norm = sqrt(v.dot(v));
    if (norm <= Real(kNoiseFloor)) return false;
    VecR r = v;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis_) r -= b.dot(r) * b;
    const Real rn = sqrt(r.dot(r));
    if (rn <= Real(threshold_) * norm) return false;
    basis_.push_back(r / rn);
    return true;
  }

  [[nodiscard]] int dimension() const { return static_cast<int>(basis_.size()); }
  [[nodiscard]] bool full() const { return static_cast<Eigen::Index>(basis_.size()) == length_; }

 private:
  Eigen::Index length_;
  double threshold_;
  std::vector<VecR> basis_;
};

VecR flatten(const MatR& m) { return Eigen::Map<const VecR>(m.data(), m.size()); }

template <typename M>
Eigen::Index sym_index(Eigen::Index i, Eigen::Index j, Eigen::Index n) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i - 1) / 2 + (j - i);
}

// rows: entries (a <= b) of g^T Q g - Q for each generator; columns: Q_ij, i <= j
template <typename S>
Mat<S> form_system(const std::vector<Mat<S>>& gens) {
  const auto n = gens.front().rows();
  const auto u = n * (n + 1) / 2;
  Mat<S> sys = Mat<S>::Zero(static_cast<Eigen::Index>(gens.size()) * u, u);
  Eigen::Index row = 0;
  for (const auto& g : gens)
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = a; b < n; ++b, ++row) {
        for (Eigen::Index i = 0; i < n; ++i)
          for (Eigen::Index j = 0; j < n; ++j) {
            const S c = g(i, a) * g(j, b);
            if (c != 0) sys(row, sym_index<S>(i, j, n)) += c;
          }
        sys(row, sym_index<S>(a, b, n)) -= S(1);
      }
  return sys;
}

// principal logarithm only, eigenvalues kept away from the negative real axis
constexpr double kLogConeAngle = 3.1315926535;  // pi - 0.01
std::optional<MatR> real_log(const MatR& w) {
  const Eigen::MatrixXd wd = w.unaryExpr([](const Real& x) { return x.convert_to<double>(); });
  const Eigen::EigenSolver<Eigen::MatrixXd> es(wd, false);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(std::arg(es.eigenvalues()(i))) > kLogConeAngle) return std::nullopt;
  try {
    const MatR x = logm(w);
    const Real scale = std::max(Real(1), max_abs(w));
    if (max_abs(MatR(expm(x) - w)) > Real(1e-35) * scale) return std::nullopt;
    return x;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

int invariant_form_dimension(const std::vector<MatQ>& generators) {
  if (generators.empty()) throw BendingError("no generators");
  const auto n = generators.front().rows();
  return static_cast<int>(n * (n + 1) / 2 - rank<Rational>(form_system<Rational>(generators)));
}

int invariant_form_dimension(const std::vector<MatR>& generators, double rank_threshold) {
  if (generators.empty()) throw BendingError("no generators");
  const auto n = generators.front().rows();
  return static_cast<int>(n * (n + 1) / 2) - numeric_rank(form_system<Real>(generators), Real(rank_threshold));
}

int lie_span_dimension(const std::vector<MatR>& xs, double rank_threshold) {
  if (xs.empty()) return 0;
  const auto n = xs.front().rows();
  NumericSpan span(n * n, rank_threshold);
  std::vector<MatR> basis;
  for (const auto& x : xs)
    if (span.add(flatten(x))) basis.push_back(x);
  size_t done = 0;
  while (done < basis.size() && !span.full()) {
    const size_t end = basis.size();
    for (size_t i = done; i < end; ++i)
      for (size_t k = 0; k < i; ++k) {
        const MatR c = basis[i] * basis[k] - basis[k] * basis[i];
        if (span.add(flatten(c))) basis.push_back(c);
      }
    done = end;
  }
  return span.dimension();
}

ClosureCertificate closure_growth_certificate(const std::vector<MatR>& generators, const std::optional<MatQ>& claimed_form,
                                              int max_word_length) {
  if (generators.empty()) throw BendingError("no generators");
  const auto n = generators.front().rows();
  ClosureCertificate cert;
  cert.precision = precision_digits();
  cert.rank_threshold = kRankThreshold;
  std::vector<MatR> inverses;
  for (const auto& g : generators) {
    Eigen::FullPivLU<MatR> lu(g);
    if (!lu.isInvertible()) throw BendingError("closure_growth_certificate: non-invertible generator");
    inverses.push_back(lu.inverse());
  }
  cert.form_dimension = invariant_form_dimension(generators);
  if (claimed_form) {
    const MatR q = to_real(*claimed_form);
    Real worst = 0;
    for (const auto& g : generators) worst = std::max(worst, max_abs(MatR(g.transpose() * q * g - q)));
    cert.claimed_form_residual = worst.convert_to<double>();
    cert.claimed_form_preserved = cert.claimed_form_residual <= 1e-9;
  }

  // logs of reduced words, by increasing length, until the span stops growing
  struct Entry {
    MatR value;
    int last;  // letter index, 2k or 2k+1 for the inverse
  };
  std::vector<Entry> layer{{MatR::Identity(n, n), -1}};
  std::vector<MatR> logs;
  NumericSpan span(n * n, kRankThreshold);
  const int letters = static_cast<int>(generators.size()) * 2;
  for (int len = 1; len <= max_word_length; ++len) {
    std::vector<Entry> next;
    bool grew = false;
    for (const auto& e : layer)
      for (int l = 0; l < letters; ++l) {
        if (e.last >= 0 && (l ^ 1) == e.last) continue;
        const MatR& m = l % 2 ? inverses[static_cast<size_t>(l / 2)] : generators[static_cast<size_t>(l / 2)];
        MatR w = e.value * m;
        if (const auto x = real_log(w)) {
          ++cert.words_used;
          if (span.add(flatten(*x))) {
            logs.push_back(*x);
            grew = true;
          }
        } else {
          ++cert.words_skipped;
        }
        next.push_back({std::move(w), l});
      }
    layer = std::move(next);
    if (!grew && len >= 2) break;
  }
  cert.lie_span_dimension = lie_span_dimension(logs);
  cert.escaped = cert.form_dimension == 0 && (!claimed_form || !*cert.claimed_form_preserved);
  cert.status = "evidence";
  return cert;
}

ClosureCertificate closure_growth_certificate(const std::vector<MatQ>& generators, const std::optional<MatQ>& claimed_form,
                                              int max_word_length) {
  std::vector<MatR> real;
  for (const auto& g : generators) {
    if (rank<Rational>(g) != g.rows()) throw BendingError("closure_growth_certificate: non-invertible generator");
    real.push_back(to_real(g));
  }
  ClosureCertificate cert = closure_growth_certificate(real, claimed_form, max_word_length);
  cert.form_dimension = invariant_form_dimension(generators);
  cert.form_exact = true;
  if (claimed_form) {
    bool ok = true;
    for (const auto& g : generators) ok = ok && MatQ(g.transpose() * *claimed_form * g) == *claimed_form;
    cert.claimed_form_preserved = ok;
  }
  cert.escaped = cert.form_dimension == 0 && (!claimed_form || !*cert.claimed_form_preserved);
  cert.status = "certificate";
  return cert;
}

}  // namespace stdquot
