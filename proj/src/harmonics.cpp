#include "stdquot/harmonics.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <complex>
#include <mutex>
#include <sstream>

namespace stdquot {

namespace {

// Incremental echelon form; `vectors` keeps the accepted inputs unchanged.
class SpanBuilder {
 public:
  explicit SpanBuilder(Eigen::Index length) : length_(length) {}

  bool add(const VecQ& v) {
    VecQ r = reduce(v);
    Eigen::Index p = 0;
    while (p < length_ && is_zero(r(p))) ++p;
    if (p == length_) return false;
    r /= r(p);
    rows_.push_back(std::move(r));
    pivots_.push_back(p);
    vectors.push_back(v);
    return true;
  }

  [[nodiscard]] bool contains(const VecQ& v) const {
    const VecQ r = reduce(v);
    return is_zero_matrix<Rational>(r);
  }

  [[nodiscard]] int dimension() const { return static_cast<int>(rows_.size()); }

  [[nodiscard]] MatQ matrix() const {
    MatQ m(length_, static_cast<Eigen::Index>(vectors.size()));
    for (size_t i = 0; i < vectors.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = vectors[i];
    return m;
  }

  std::vector<VecQ> vectors;

 private:
  [[nodiscard]] VecQ reduce(VecQ v) const {
    for (size_t k = 0; k < rows_.size(); ++k) {
      const Rational c = v(pivots_[k]);
      if (is_zero(c)) continue;
      const VecQ& row = rows_[k];
      for (Eigen::Index i = 0; i < length_; ++i)
        if (!is_zero(row(i))) v(i) -= c * row(i);
    }
    return v;
  }

  Eigen::Index length_;
  std::vector<VecQ> rows_;
  std::vector<Eigen::Index> pivots_;
};

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

int pair_index(int n, int i, int j) {
  const auto pairs = so_basis_pairs(n);
  for (size_t k = 0; k < pairs.size(); ++k)
    if (pairs[k] == std::make_pair(i, j)) return static_cast<int>(k);
  throw HarmonicsError("no basis element for the given index pair");
}

// Casimir of the source acting through the given matrices (one per basis element)
MatQ casimir_of(int n, const std::vector<MatQ>& action) {
  const MatQ binv = inverse(spin_lie_algebra(n).trace_form());
  const auto d = action[0].rows();
  MatQ omega = MatQ::Zero(d, d);
  for (Eigen::Index a = 0; a < binv.rows(); ++a)
    for (Eigen::Index b = 0; b < binv.cols(); ++b) {
      if (is_zero(binv(a, b))) continue;
      omega += binv(a, b) * sparse_product<Rational>(action[static_cast<size_t>(a)], action[static_cast<size_t>(b)]);
    }
  return omega;
}

// so(n,1) boosts b_{i,n+1} generate the whole algebra; the ones with i >= 2
// generate spin(n-1,1)
std::vector<int> boost_indices(int n, int first) {
  std::vector<int> out;
  for (int i = first; i <= n; ++i) out.push_back(pair_index(n, i, n + 1));
  return out;
}

std::vector<std::pair<GaussRational, MatG>> gauss_eigenspaces(const MatG& r) {
  const auto k = r.rows();
  Eigen::MatrixXcd md(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j)
      md(i, j) = {r(i, j).re.convert_to<double>(), r(i, j).im.convert_to<double>()};
  const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(md, false);
  std::vector<GaussRational> candidates;
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto z = es.eigenvalues()(i);
    const GaussRational g(rationalize(z.real(), 1000), rationalize(z.imag(), 1000));
    if (std::find(candidates.begin(), candidates.end(), g) == candidates.end()) candidates.push_back(g);
  }
  std::vector<std::pair<GaussRational, MatG>> out;
  Eigen::Index total = 0;
  for (const auto& lambda : candidates) {
    MatG shifted = r;
    for (Eigen::Index i = 0; i < k; ++i) shifted(i, i) -= lambda;
    MatG ker = kernel<GaussRational>(shifted);
    if (ker.cols() == 0) continue;
    total += ker.cols();
    out.emplace_back(lambda, std::move(ker));
  }
  if (total != k) throw HarmonicsError("Cartan element is not diagonalizable over Q(i)");
  return out;
}

std::string e_label(const VecQ& e) {
  std::ostringstream s;
  s << '(';
  for (Eigen::Index i = 0; i < e.size(); ++i) s << (i ? "," : "") << format_rational(e(i));
  s << ')';
  return s.str();
}

Rational casimir_of_weight(const RootSystem& rs, const Weight& hw, const Rational& kappa) {
  const VecQ e = rs.to_coordinates(hw);
  const VecQ r = rs.to_coordinates(rs.rho());
  return kappa * e.dot(VecQ(e + 2 * r));
}

// j >= 0 with j(j+n-1) = x, if any
std::optional<int> spherical_degree(int n, const Rational& x) {
  if (denominator_of(x) != 1 || x < 0) return std::nullopt;
  const long v = static_cast<long>(numerator_of(x));
  for (long j = 0; j * (j + n - 1) <= v; ++j)
    if (j * (j + n - 1) == v) return static_cast<int>(j);
  return std::nullopt;
}

MatQ closure_under(const std::vector<MatQ>& action, const std::vector<int>& gens, const MatQ& start) {
  SpanBuilder span(start.rows());
  std::vector<VecQ> queue;
  for (Eigen::Index c = 0; c < start.cols(); ++c)
    if (span.add(start.col(c))) queue.push_back(start.col(c));
  while (!queue.empty()) {
    const VecQ v = queue.back();
    queue.pop_back();
    for (int a : gens) {
      const VecQ w = sparse_product<Rational>(action[static_cast<size_t>(a)], MatQ(v));
      if (span.add(w)) queue.push_back(w);
    }
  }
  return span.matrix();
}

}  // namespace

Integer harmonic_dimension(int n, int j) { return binomial(n + j, j) - binomial(n + j - 2, j - 2); }

RootSystem source_root_system(int n) {
  if (n < 2) throw HarmonicsError("spin(n,1) requires n >= 2");
  return n % 2 == 0 ? RootSystem::make(Family::B, n / 2) : RootSystem::make(Family::D, (n + 1) / 2);
}

Rational casimir_scale(int n) {
  static std::mutex mu;
  static std::map<int, Rational> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  if (n < 2 || n > 8) throw HarmonicsError("casimir_scale: requires 2 <= n <= 8");
  const auto v1 = so_vector_algebra(n);
  const MatQ omega1 = casimir_of(n, v1.basis());
  const Rational c1 = omega1(0, 0);
  if (omega1 != MatQ(c1 * MatQ::Identity(n + 1, n + 1))) throw HarmonicsError("Casimir is not scalar on V_1");

  // Sym^2 V_1 = V_2 + V_0
  const int s = n + 1;
  std::vector<std::pair<int, int>> sym;
  for (int i = 0; i < s; ++i)
    for (int j = i; j < s; ++j) sym.emplace_back(i, j);
  const auto ds = static_cast<Eigen::Index>(sym.size());
  std::vector<MatQ> action;
  for (const auto& x : v1.basis()) {
    MatQ a = MatQ::Zero(ds, ds);
    for (Eigen::Index c = 0; c < ds; ++c) {
      MatQ e = MatQ::Zero(s, s);
      e(sym[static_cast<size_t>(c)].first, sym[static_cast<size_t>(c)].second) = 1;
      e(sym[static_cast<size_t>(c)].second, sym[static_cast<size_t>(c)].first) = 1;
      const MatQ img = x * e + e * x.transpose();
      for (Eigen::Index r = 0; r < ds; ++r) a(r, c) = img(sym[static_cast<size_t>(r)].first, sym[static_cast<size_t>(r)].second);
    }
    action.push_back(std::move(a));
  }
  const auto spaces = rational_eigenspaces(casimir_of(n, action));
  Rational c2 = 0;
  for (const auto& sp : spaces) {
    if (sp.value == 0) {
      if (sp.basis.cols() != 1) throw HarmonicsError("Sym^2 V_1 has the wrong trivial part");
    } else {
      c2 = sp.value;
      if (Integer(sp.basis.cols()) != harmonic_dimension(n, 2)) throw HarmonicsError("Sym^2 V_1 has the wrong V_2 part");
    }
  }
  if (spaces.size() != 2 || c2 * n != c1 * 2 * (n + 1)) throw HarmonicsError("Casimir ratio c2/c1 differs from 2(n+1)/n");
  const Rational kappa = c1 / n;
  std::lock_guard<std::mutex> lock(mu);
  cache[n] = kappa;
  return kappa;
}

SphericalLabel spherical_label(int n, int j) {
  if (n < 2 || j < 0) throw HarmonicsError("spherical_label: requires n >= 2 and j >= 0");
  SphericalLabel l;
  l.n = n;
  l.j = j;
  l.dim = harmonic_dimension(n, j);
  const auto rs = source_root_system(n);
  VecQ e = VecQ::Zero(rs.rank());
  e(0) = j;
  if (weyl_dim(rs, rs.from_coordinates(e)) != l.dim) throw HarmonicsError("harmonic dimension differs from weyl_dim");
  l.laplace_eigenvalue = -static_cast<long>(j) * (j + n - 1);
  if (n <= 8) l.casimir_eigenvalue = casimir_scale(n) * j * (j + n - 1);
  return l;
}

Integer BranchingTable::accounted_dim() const {
  Integer total = 0;
  for (const auto& [j, m] : spherical) total += harmonic_dimension(n, j) * m;
  for (const auto& e : nonspherical) total += e.dim * e.multiplicity;
  return total;
}

std::map<int, long> BranchingTable::complex_spherical() const {
  std::map<int, long> out;
  for (const auto& [j, m] : spherical) out[j] = complex_target ? m / 2 : m;
  return out;
}

std::vector<MatQ> adjoint_action(const EmbeddingMap& emb) {
  std::vector<MatQ> out;
  for (const auto& x : emb.images) out.push_back(emb.target->adjoint(x));
  return out;
}

CasimirResult casimir_method(const EmbeddingMap& emb) {
  const int n = emb.n;
  const auto rho = adjoint_action(emb);
  const Rational kappa = casimir_scale(n);
  const auto spaces = rational_eigenspaces(casimir_of(n, rho));
  const auto sub = boost_indices(n, 2);
  const auto all = boost_indices(n, 1);
  CasimirResult res;
  for (const auto& sp : spaces) {
    const long k = static_cast<long>(sp.basis.cols());
    MatQ stacked(static_cast<Eigen::Index>(sub.size()) * sp.basis.rows(), sp.basis.cols());
    for (size_t i = 0; i < sub.size(); ++i)
      stacked.middleRows(static_cast<Eigen::Index>(i) * sp.basis.rows(), sp.basis.rows()) =
          sparse_product<Rational>(rho[static_cast<size_t>(sub[i])], sp.basis);
    const MatQ fixed = sub.empty() ? MatQ::Identity(k, k) : kernel<Rational>(stacked);
    const long f = static_cast<long>(fixed.cols());
    long spherical_dim = 0;
    if (f > 0) {
      const auto j = spherical_degree(n, sp.value / kappa);
      if (!j) throw HarmonicsError("fixed vectors at a Casimir value of no spherical harmonic");
      const MatQ component = closure_under(rho, all, sparse_product<Rational>(sp.basis, fixed));
      spherical_dim = static_cast<long>(harmonic_dimension(n, *j)) * f;
      if (component.cols() != spherical_dim) throw HarmonicsError("spherical isotypic component has the wrong dimension");
      res.spherical[*j] += f;
      res.spherical_components[*j] = component;
    }
    if (k > spherical_dim) res.nonspherical_dim[sp.value] += k - spherical_dim;
  }
  return res;
}

std::vector<std::pair<Weight, long>> weight_method(const EmbeddingMap& emb) {
  const int n = emb.n;
  const auto rs = source_root_system(n);
  const int m = rs.rank();
  const auto rho = adjoint_action(emb);
  struct Piece {
    std::vector<Rational> prefix;
    MatG basis;
  };
  std::vector<Piece> pieces;
  for (const auto& sp : rational_eigenspaces(rho[static_cast<size_t>(pair_index(n, 1, n + 1))]))
    pieces.push_back({{sp.value}, to_gauss(sp.basis)});
  for (int r = 1; r < m; ++r) {
    const MatG h = to_gauss(rho[static_cast<size_t>(pair_index(n, 2 * r, 2 * r + 1))]);
    std::vector<Piece> next;
    for (const auto& p : pieces) {
      MatG restricted;
      if (!solve<GaussRational>(p.basis, sparse_product<GaussRational>(h, p.basis), restricted))
        throw HarmonicsError("Cartan elements do not commute");
      for (auto& [lambda, k] : gauss_eigenspaces(restricted)) {
        if (lambda.re != 0) throw HarmonicsError("rotation with a real eigenvalue");
        auto prefix = p.prefix;
        prefix.push_back(lambda.im);
        next.push_back({std::move(prefix), sparse_product<GaussRational>(p.basis, k)});
      }
    }
    pieces = std::move(next);
  }
  WeightMultiset ms;
  for (const auto& p : pieces) {
    VecQ e(m);
    for (int i = 0; i < m; ++i) e(i) = p.prefix[static_cast<size_t>(i)];
    ms.add(rs.from_coordinates(e), static_cast<long>(p.basis.cols()));
  }
  return peel_highest_weights(rs, ms);
}

BranchingTable isotypic_decomposition(const EmbeddingMap& emb) {
  const int n = emb.n;
  if (emb.target->dimension() > 1000) throw HarmonicsError("target dimension exceeds 1000");
  const auto rs = source_root_system(n);
  const Rational kappa = casimir_scale(n);
  const auto cas = casimir_method(emb);
  const auto peeled = weight_method(emb);

  BranchingTable t;
  t.embedding = emb.name;
  t.n = n;
  t.target_dim = emb.target->dimension();
  t.complex_target = emb.info.complex_structure;
  std::map<int, long> spherical;
  std::map<Rational, long> nonspherical_dim;
  for (const auto& [hw, mult] : peeled) {
    const VecQ e = rs.to_coordinates(hw);
    bool is_spherical = true;
    for (Eigen::Index i = 1; i < e.size(); ++i) is_spherical = is_spherical && e(i) == 0;
    if (is_spherical && denominator_of(e(0)) == 1 && e(0) >= 0) {
      spherical[static_cast<int>(numerator_of(e(0)))] += mult;
      continue;
    }
    NonsphericalEntry entry;
    entry.highest_weight = hw;
    entry.label = e_label(e);
    entry.multiplicity = mult;
    entry.dim = weyl_dim(rs, hw);
    entry.casimir = casimir_of_weight(rs, hw, kappa);
    nonspherical_dim[entry.casimir] += static_cast<long>(entry.dim) * mult;
    t.nonspherical.push_back(std::move(entry));
  }
  if (spherical != cas.spherical)
    throw HarmonicsError(emb.name + ": Casimir and weight methods disagree on spherical multiplicities");
  if (nonspherical_dim != cas.nonspherical_dim)
    throw HarmonicsError(emb.name + ": Casimir and weight methods disagree on non-spherical content");
  t.spherical = spherical;
  for (const auto& [j, mult] : spherical)
    if (mult > 0) t.jmax = std::max(t.jmax, j);
  if (t.accounted_dim() != Integer(t.target_dim)) throw HarmonicsError(emb.name + ": dimension bookkeeping fails");
  if (t.complex_target)
    for (const auto& [j, mult] : spherical)
      if (mult % 2) throw HarmonicsError(emb.name + ": odd real multiplicity on a complex target");
  return t;
}

GPhiResult g_phi(const EmbeddingMap& emb) {
  const auto cas = casimir_method(emb);
  const auto d = static_cast<Eigen::Index>(emb.target->dimension());
  SpanBuilder span(d);
  for (Eigen::Index a = 0; a < emb.matrix.cols(); ++a) span.add(emb.matrix.col(a));
  for (const auto& [j, comp] : cas.spherical_components)
    for (Eigen::Index c = 0; c < comp.cols(); ++c) span.add(comp.col(c));
  GPhiResult res;
  std::vector<MatQ> mats;
  for (const auto& v : span.vectors) mats.push_back(emb.target->from_coordinates(v));
  size_t done = 0;
  while (done < span.vectors.size()) {
    ++res.rounds;
    const size_t end = span.vectors.size();
    for (size_t i = done; i < end; ++i)
      for (size_t k = 0; k < end; ++k) {
        if (k >= done && k <= i) continue;
        const auto c = emb.target->coordinates(commutator<Rational>(mats[i], mats[k]));
        if (!c) throw HarmonicsError("bracket leaves the target algebra");
        if (span.add(*c)) mats.push_back(emb.target->from_coordinates(*c));
      }
    done = end;
    if (span.dimension() > d) throw HarmonicsError("closure exceeds the ambient algebra");
  }
  res.basis = span.vectors;
  res.dimension = span.dimension();
  res.subalgebra = true;
  const auto rho = adjoint_action(emb);
  res.submodule = true;
  for (const auto& v : res.basis)
    for (const auto& r : rho)
      if (!span.contains(sparse_product<Rational>(r, MatQ(v)))) res.submodule = false;
  return res;
}

int bending_k(const BranchingTable& table) {
  long k = 2;
  for (const auto& [j, mult] : table.spherical)
    if (j >= 1) k = std::max(k, mult);
  return static_cast<int>(k);
}

std::string RigidityIndicator::str() const {
  switch (kind) {
    case RigidityKind::CentralizerOnly: return "CENTRALIZER_ONLY";
    case RigidityKind::FullZariskiDense: return "FULL_ZARISKI_DENSE";
    case RigidityKind::Intermediate: return "INTERMEDIATE(" + std::to_string(gphi_dim) + ")";
  }
  return "?";
}

RigidityIndicator rigidity_indicator(const EmbeddingMap& emb, const BranchingTable& table) {
  RigidityIndicator r;
  r.lower_bound_only = emb.n == 2;
  bool only_trivial = true;
  for (const auto& [j, mult] : table.spherical)
    if (j >= 1 && mult > 0) only_trivial = false;
  r.gphi_dim = g_phi(emb).dimension;
  const bool full = r.gphi_dim == emb.target->dimension();
  // the centralizer criterion needs a simple target
  const bool simple_target = RealGroupDescriptor::parse(emb.info.group).factors.size() == 1;
  if (only_trivial && (simple_target || full)) {
    r.kind = RigidityKind::CentralizerOnly;
    return r;
  }
  r.kind = full ? RigidityKind::FullZariskiDense : RigidityKind::Intermediate;
  return r;
}

std::string CrossCheckReport::status_str() const {
  switch (status) {
    case CrossCheckStatus::Pass: return "pass";
    case CrossCheckStatus::Mismatch: return "MISMATCH";
    case CrossCheckStatus::Informational: return "informational";
    case CrossCheckStatus::NotDecidable: return "not decidable by this tool";
  }
  return "?";
}

CrossCheckReport cross_check_case(const TripleCase& c) {
  CrossCheckReport rep;
  rep.label = c.label();
  if (!c.embedding.empty()) {
    const auto emb = named_embedding(c.embedding);
    if (emb.n < 3) {
      rep.status = CrossCheckStatus::NotDecidable;
      rep.computed = "n=2";
      rep.detail = "spin(2,1): lower bound only, upper bound needs n >= 3";
      return rep;
    }
    const auto table = isotypic_decomposition(emb);
    const auto ind = rigidity_indicator(emb, table);
    rep.computed = ind.str();
    if (ind.kind == RigidityKind::FullZariskiDense) {
      rep.status = c.verdicts.q3 ? CrossCheckStatus::Pass : CrossCheckStatus::Mismatch;
      rep.detail = std::string("stored q3 = ") + (c.verdicts.q3 ? "true" : "false");
    } else if (ind.kind == RigidityKind::CentralizerOnly) {
      rep.status = c.verdicts.q1 ? CrossCheckStatus::Mismatch : CrossCheckStatus::Pass;
      rep.detail = std::string("stored q1 = ") + (c.verdicts.q1 ? "true" : "false");
    } else {
      rep.status = CrossCheckStatus::Informational;
      rep.detail = "g^phi is a proper subalgebra";
    }
    return rep;
  }
  if (c.L.factors.size() != 1) {
    rep.status = CrossCheckStatus::NotDecidable;
    rep.detail = "L is not simple";
    return rep;
  }
  const auto& f = c.L.factors[0];
  const bool unitary = (f.family == GroupFamily::SU || f.family == GroupFamily::U) && std::min(f.p, f.q) == 1;
  if (unitary && std::max(f.p, f.q) == 1) {
    rep.status = CrossCheckStatus::NotDecidable;
    rep.computed = "n=2";
    rep.detail = "su(1,1) = so(2,1): lower bound only, upper bound needs n >= 3";
    return rep;
  }
  if (unitary || (f.family == GroupFamily::SOStar && f.p == 6)) {
    rep.status = CrossCheckStatus::NotDecidable;
    rep.computed = "su(m,1)";
    rep.detail = "L of type su(m,1): requires the cup-product analysis";
    return rep;
  }
  const bool quaternionic = f.family == GroupFamily::Sp && std::min(f.p, f.q) == 1 && std::max(f.p, f.q) >= 2;
  if (quaternionic || c.L.real_rank() >= 2) {
    rep.computed = "CENTRALIZER_ONLY";
    rep.detail = std::string(quaternionic ? "by rule, L of type sp(m,1), m >= 2" : "by rule, L of real rank >= 2") +
                 ": no spherical harmonics constituents; stored q1 = " + (c.verdicts.q1 ? "true" : "false");
    rep.status = c.verdicts.q1 ? CrossCheckStatus::Mismatch : CrossCheckStatus::Pass;
    return rep;
  }
  rep.status = CrossCheckStatus::NotDecidable;
  rep.detail = "no shipped embedding for L";
  return rep;
}

}  // namespace stdquot
