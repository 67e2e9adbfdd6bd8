#include "stdquot/numeric.hpp"
#include "stdquot/spinmodel.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>

namespace stdquot {

namespace {

MatQ mat2(int a, int b, int c, int d) {
  MatQ m(2, 2);
  m << a, b, c, d;
  return m;
}

const MatQ& sigma_x() {
  static const MatQ m = mat2(0, 1, 1, 0);
  return m;
}
const MatQ& sigma_z() {
  static const MatQ m = mat2(1, 0, 0, -1);
  return m;
}
const MatQ& rot_j() {
  static const MatQ m = mat2(0, -1, 1, 0);
  return m;
}

MatQ kron(const MatQ& a, const MatQ& b) { return Eigen::kroneckerProduct(a, b).eval(); }

// quaternion multiplication on R^4 with basis (1, i, j, k)
MatQ quaternion_matrix(int unit, bool left) {
  // table[a][b] = index and sign of e_a * e_b
  static const int idx[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sgn[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  MatQ m = MatQ::Zero(4, 4);
  for (int b = 0; b < 4; ++b) {
    const int a = unit;
    const int i = left ? idx[a][b] : idx[b][a];
    const int s = left ? sgn[a][b] : sgn[b][a];
    m(i, b) = s;
  }
  return m;
}

struct Gens {
  std::vector<MatQ> pos, neg;
  int size = 1;
};

// Cl(p,q) -> Cl(p+1,q+1)
Gens raise_both(const Gens& g) {
  Gens out;
  out.size = g.size * 2;
  const MatQ id = MatQ::Identity(g.size, g.size);
  for (const auto& x : g.pos) out.pos.push_back(kron(x, sigma_z()));
  out.pos.push_back(kron(id, sigma_x()));
  for (const auto& x : g.neg) out.neg.push_back(kron(x, sigma_z()));
  out.neg.push_back(kron(id, rot_j()));
  return out;
}

// Cl(p,q) -> Cl(q+2,p)
Gens flip(const Gens& g) {
  Gens out;
  out.size = g.size * 2;
  const MatQ id = MatQ::Identity(g.size, g.size);
  for (const auto& x : g.neg) out.pos.push_back(kron(x, rot_j()));
  out.pos.push_back(kron(id, sigma_x()));
  out.pos.push_back(kron(id, sigma_z()));
  for (const auto& x : g.pos) out.neg.push_back(kron(x, rot_j()));
  return out;
}

MatQ product(const std::vector<MatQ>& xs) {
  MatQ p = MatQ::Identity(xs[0].rows(), xs[0].cols());
  for (const auto& x : xs) p = sparse_product<Rational>(p, x);
  return p;
}

Gens positive_only(int n);

Gens negative_only(int q) {
  Gens g;
  if (q == 0) return g;
  if (q == 1) {
    g.size = 2;
    g.neg = {rot_j()};
    return g;
  }
  if (q <= 3) {
    g.size = 4;
    for (int u = 1; u <= q; ++u) g.neg.push_back(quaternion_matrix(u, true));
    return g;
  }
  if (q <= 7) {
    const Gens h = negative_only(3);
    g.size = 8;
    for (const auto& x : h.neg) g.neg.push_back(kron(x, sigma_z()));
    g.neg.push_back(kron(MatQ::Identity(4, 4), rot_j()));
    const MatQ omega = product(g.neg);
    for (int u = 1; u <= q - 4; ++u)
      g.neg.push_back(sparse_product<Rational>(omega, kron(quaternion_matrix(u, false), MatQ::Identity(2, 2))));
    return g;
  }
  // q = 8, 9: Cl(0,6) tensored with Cl(q-6,0) through the volume element
  const Gens six = negative_only(6);
  const Gens tail = positive_only(q - 6);
  const MatQ omega = product(six.neg);
  const MatQ id = MatQ::Identity(tail.size, tail.size);
  g.size = six.size * tail.size;
  for (const auto& x : six.neg) g.neg.push_back(kron(x, id));
  for (const auto& b : tail.pos) g.neg.push_back(kron(omega, b));
  return g;
}

Gens positive_only(int n) {
  Gens g;
  if (n == 0) return g;
  if (n == 1) {
    g.pos = {MatQ::Identity(1, 1)};
    return g;
  }
  return flip(negative_only(n - 2));
}

}  // namespace

bool CliffordAlgebra::relations_hold() const {
  const int m = p + q;
  if (static_cast<int>(generators.size()) != m) return false;
  const int s = size();
  const MatQ id = MatQ::Identity(s, s);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      const MatQ& a = generators[static_cast<size_t>(i)];
      const MatQ& b = generators[static_cast<size_t>(j)];
      const MatQ ac = sparse_product<Rational>(a, b) + sparse_product<Rational>(b, a);
      const int eps = i < p ? 1 : -1;
      const MatQ expected = i == j ? MatQ(2 * eps * id) : MatQ::Zero(s, s);
      if (ac != expected) return false;
    }
  return true;
}

CliffordAlgebra clifford_algebra(int p, int q) {
  if (p < 0 || q < 0 || p + q > 9) throw SpinModelError("clifford_algebra: requires p, q >= 0 and p + q <= 9");
  const int m = std::min(p, q);
  Gens g = p >= q ? positive_only(p - q) : negative_only(q - p);
  for (int i = 0; i < m; ++i) g = raise_both(g);
  if (g.size > 256) throw SpinModelError("clifford_algebra: size budget exceeded");
  CliffordAlgebra cl;
  cl.p = p;
  cl.q = q;
  cl.generators = g.pos;
  cl.generators.insert(cl.generators.end(), g.neg.begin(), g.neg.end());
  return cl;
}

std::vector<MatQ> bivectors(const CliffordAlgebra& cl) {
  std::vector<MatQ> out;
  const auto& g = cl.generators;
  for (size_t i = 0; i < g.size(); ++i)
    for (size_t j = i + 1; j < g.size(); ++j) out.push_back(sparse_product<Rational>(g[i], g[j]));
  return out;
}

MatrixLieAlgebra spin_lie_algebra(int n) {
  if (n < 2 || n > 8) throw SpinModelError("spin_lie_algebra: requires 2 <= n <= 8");
  const auto cl = clifford_algebra(n, 0);
  const auto& g = cl.generators;
  const Rational half(1, 2);
  std::vector<MatQ> basis;
  for (auto [i, j] : so_basis_pairs(n)) {
    if (j <= n)
      basis.push_back(half * sparse_product<Rational>(g[static_cast<size_t>(i - 1)], g[static_cast<size_t>(j - 1)]));
    else
      basis.push_back(half * g[static_cast<size_t>(i - 1)]);
  }
  return MatrixLieAlgebra("spin(" + std::to_string(n) + ",1)", std::move(basis));
}

namespace {

// matrix of x -> a x a^{-1} on the span of the generators, via the trace pairing
template <typename M>
M conjugation_on_generators(const std::vector<M>& gens, const M& a, const M& a_inv, const std::vector<int>& eps) {
  const auto m = static_cast<Eigen::Index>(gens.size());
  const auto s = gens[0].rows();
  M out(m, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const M y = a * gens[static_cast<size_t>(k)] * a_inv;
    for (Eigen::Index l = 0; l < m; ++l) {
      const M prod = gens[static_cast<size_t>(l)] * y;
      out(l, k) = prod.trace() / (eps[static_cast<size_t>(l)] * s);
    }
  }
  return out;
}

}  // namespace

DoubleCoverReport double_cover_check(int n, int samples, std::uint64_t seed) {
  if (n < 2 || n > 8) throw SpinModelError("double_cover_check: requires 2 <= n <= 8");
  DoubleCoverReport rep;
  precision_digits();
  const auto cl = clifford_algebra(n, 1);
  const int m = n + 1;
  const int s = cl.size();
  std::vector<int> eps(static_cast<size_t>(m), 1);
  eps.back() = -1;
  MatQ eta = MatQ::Identity(m, m);
  eta(m - 1, m - 1) = -1;
  const MatQ id = MatQ::Identity(s, s);
  const auto& g = cl.generators;

  // identity
  {
    const MatQ ad = conjugation_on_generators<MatQ>(g, id, id, eps);
    rep.identity_ok = ad == MatQ::Identity(m, m);
  }
  // exp(pi g1 g2) = cos(pi) + sin(pi) g1 g2 = -1, since (g1 g2)^2 = -1
  {
    const MatQ e12 = sparse_product<Rational>(g[0], g[1]);
    const bool square_ok = sparse_product<Rational>(e12, e12) == MatQ(-id);
    const MatR numeric = expm(MatR(to_real(e12) * Real(acos(Real(-1)))));
    const Real err = max_abs(numeric + MatR::Identity(s, s));
    rep.kernel_element_is_minus_identity = square_ok && err < Real(1e-30);
    const MatQ minus = -id;
    rep.kernel_acts_trivially = conjugation_on_generators<MatQ>(g, minus, minus, eps) == MatQ::Identity(m, m);
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-4, 4);
  bool exact_ok = true;
  // exp(tN) = 1 + tN for the null element N = g1 g2 + g2 g_{n+1}
  const MatQ nil = sparse_product<Rational>(g[0], g[1]) + sparse_product<Rational>(g[1], g[static_cast<size_t>(m - 1)]);
  for (int k = 0; k < samples; ++k) {
    const Rational t(coef(rng), 1 + std::abs(coef(rng)));
    const MatQ a = id + t * nil;
    const MatQ a_inv = id - t * nil;
    const MatQ ad = conjugation_on_generators<MatQ>(g, a, a_inv, eps);
    exact_ok = exact_ok && MatQ(ad.transpose() * eta * ad) == eta;
    ++rep.exact_samples;
  }

  const auto biv = bivectors(cl);
  std::vector<MatR> gr;
  for (const auto& x : g) gr.push_back(to_real(x));
  const MatR eta_r = to_real(eta);
  double worst = 0;
  for (int k = 0; k < samples; ++k) {
    MatQ x = MatQ::Zero(s, s);
    for (const auto& b : biv) x += Rational(coef(rng), 8) * b;
    const MatR xr = to_real(x);
    const MatR a = expm(xr);
    const MatR a_inv = expm(MatR(-xr));
    const MatR ad = conjugation_on_generators<MatR>(gr, a, a_inv, eps);
    const Real res = max_abs(MatR(ad.transpose() * eta_r * ad - eta_r));
    worst = std::max(worst, res.convert_to<double>());
    ++rep.numeric_samples;
  }
  rep.worst_form_residual = worst;
  rep.ok = rep.identity_ok && rep.kernel_element_is_minus_identity && rep.kernel_acts_trivially && exact_ok &&
           worst <= 1e-12;
  return rep;
}

}  // namespace stdquot
