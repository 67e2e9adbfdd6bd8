#include "stdquot/spinmodel.hpp"

#include <algorithm>
#include <array>

namespace stdquot {

namespace {

Eigen::Index flat(int n, int r, int c) { return static_cast<Eigen::Index>(c) * n + r; }

MatQ unflatten(const VecQ& v, int n) {
  MatQ m(n, n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) m(r, c) = v(flat(n, r, c));
  return m;
}

// Accumulates linear constraints and keeps them reduced so that the working
// matrix never grows far beyond the number of unknowns.
class ConstraintSystem {
 public:
  explicit ConstraintSystem(Eigen::Index unknowns) : unknowns_(unknowns), reduced_(0, unknowns) {}

  void add(const VecQ& row) {
    if (is_zero_matrix<Rational>(row)) return;
    pending_.push_back(row);
    if (static_cast<Eigen::Index>(pending_.size()) >= unknowns_) reduce();
  }

  MatQ kernel_basis() {
    reduce();
    return kernel<Rational>(reduced_);
  }

 private:
  void reduce() {
    if (pending_.empty()) return;
    MatQ m(reduced_.rows() + static_cast<Eigen::Index>(pending_.size()), unknowns_);
    if (reduced_.rows()) m.topRows(reduced_.rows()) = reduced_;
    for (size_t i = 0; i < pending_.size(); ++i) m.row(reduced_.rows() + static_cast<Eigen::Index>(i)) = pending_[i].transpose();
    pending_.clear();
    const auto piv = rref_in_place(m);
    reduced_ = m.topRows(static_cast<Eigen::Index>(piv.size()));
  }

  Eigen::Index unknowns_;
  MatQ reduced_;
  std::vector<VecQ> pending_;
};

void add_commute_constraints(ConstraintSystem& sys, int n, const MatQ& c) {
  // (XC - CX)(r,s) = 0
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) {
      VecQ row = VecQ::Zero(static_cast<Eigen::Index>(n) * n);
      for (int k = 0; k < n; ++k) {
        if (!is_zero(c(k, s))) row(flat(n, r, k)) += c(k, s);
        if (!is_zero(c(r, k))) row(flat(n, k, s)) -= c(r, k);
      }
      sys.add(row);
    }
}

void add_form_constraints(ConstraintSystem& sys, int n, const MatQ& b) {
  // (X^T B + B X)(r,s) = 0
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) {
      VecQ row = VecQ::Zero(static_cast<Eigen::Index>(n) * n);
      for (int k = 0; k < n; ++k) {
        if (!is_zero(b(k, s))) row(flat(n, k, r)) += b(k, s);
        if (!is_zero(b(r, k))) row(flat(n, k, s)) += b(r, k);
      }
      sys.add(row);
    }
}

std::vector<MatQ> kernel_matrices(const MatQ& k, int n) {
  std::vector<MatQ> out;
  for (Eigen::Index j = 0; j < k.cols(); ++j) out.push_back(unflatten(k.col(j), n));
  return out;
}

}  // namespace

MatrixLieAlgebra::MatrixLieAlgebra(std::string name, std::vector<MatQ> basis)
    : name_(std::move(name)), basis_(std::move(basis)) {
  if (basis_.empty()) {
    size_ = 0;
    return;
  }
  size_ = static_cast<int>(basis_[0].rows());
  const Eigen::Index n2 = static_cast<Eigen::Index>(size_) * size_;
  const auto d = static_cast<Eigen::Index>(basis_.size());
  MatQ mt(d, n2);
  for (Eigen::Index a = 0; a < d; ++a) {
    const MatQ& e = basis_[static_cast<size_t>(a)];
    if (e.rows() != size_ || e.cols() != size_) throw SpinModelError(name_ + ": basis matrices differ in size");
    for (Eigen::Index k = 0; k < n2; ++k) mt(a, k) = e.data()[k];
  }
  MatQ r = mt;
  pivots_ = rref_in_place(r);
  if (static_cast<Eigen::Index>(pivots_.size()) != d) throw SpinModelError(name_ + ": basis is linearly dependent");
  MatQ sub(d, d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index i = 0; i < d; ++i) sub(i, a) = mt(a, pivots_[static_cast<size_t>(i)]);
  pivot_inverse_ = inverse(sub);
}

VecQ MatrixLieAlgebra::coordinates_unchecked(const MatQ& x) const {
  const auto d = static_cast<Eigen::Index>(basis_.size());
  VecQ xp(d);
  for (Eigen::Index i = 0; i < d; ++i) xp(i) = x.data()[pivots_[static_cast<size_t>(i)]];
  return sparse_product<Rational>(pivot_inverse_, xp);
}

std::optional<VecQ> MatrixLieAlgebra::coordinates(const MatQ& x) const {
  if (x.rows() != size_ || x.cols() != size_) return std::nullopt;
  VecQ c = coordinates_unchecked(x);
  if (from_coordinates(c) != x) return std::nullopt;
  return c;
}

MatQ MatrixLieAlgebra::from_coordinates(const VecQ& c) const {
  MatQ x = MatQ::Zero(size_, size_);
  for (Eigen::Index a = 0; a < c.size(); ++a) {
    if (is_zero(c(a))) continue;
    const MatQ& e = basis_[static_cast<size_t>(a)];
    for (Eigen::Index k = 0; k < e.size(); ++k)
      if (!is_zero(e.data()[k])) x.data()[k] += c(a) * e.data()[k];
  }
  return x;
}

MatQ MatrixLieAlgebra::structure_constants() const {
  const int d = dimension();
  MatQ sc = MatQ::Zero(d, static_cast<Eigen::Index>(d) * d);
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) {
      const auto c = coordinates(commutator<Rational>(element(a), element(b)));
      if (!c) throw SpinModelError(name_ + ": not closed under bracket");
      sc.col(a * d + b) = *c;
      sc.col(b * d + a) = -*c;
    }
  return sc;
}

MatQ MatrixLieAlgebra::trace_form() const {
  const int d = dimension();
  MatQ b(d, d);
  for (int a = 0; a < d; ++a)
    for (int c = a; c < d; ++c) {
      Rational t = 0;
      const MatQ& x = element(a);
      const MatQ& y = element(c);
      for (int i = 0; i < size_; ++i)
        for (int j = 0; j < size_; ++j)
          if (!is_zero(x(i, j)) && !is_zero(y(j, i))) t += x(i, j) * y(j, i);
      b(a, c) = t;
      b(c, a) = t;
    }
  return b;
}

MatQ MatrixLieAlgebra::adjoint(const MatQ& x) const {
  const int d = dimension();
  MatQ ad(d, d);
  for (int b = 0; b < d; ++b) {
    const auto c = coordinates(commutator<Rational>(x, element(b)));
    if (!c) throw SpinModelError(name_ + ": element does not normalize the algebra");
    ad.col(b) = *c;
  }
  return ad;
}

bool MatrixLieAlgebra::closed_under_bracket() const {
  for (int a = 0; a < dimension(); ++a)
    for (int b = a + 1; b < dimension(); ++b)
      if (!coordinates(commutator<Rational>(element(a), element(b)))) return false;
  return true;
}

bool MatrixLieAlgebra::jacobi_check(std::mt19937_64& rng, int triples) const {
  const int d = dimension();
  if (d == 0) return true;
  std::uniform_int_distribution<int> pick(0, d - 1);
  auto bracket = [&](const VecQ& u, const VecQ& v) -> std::optional<VecQ> {
    return coordinates(commutator<Rational>(from_coordinates(u), from_coordinates(v)));
  };
  auto unit = [&](int a) {
    VecQ e = VecQ::Zero(d);
    e(a) = 1;
    return e;
  };
  for (int t = 0; t < triples; ++t) {
    const VecQ x = unit(pick(rng)), y = unit(pick(rng)), z = unit(pick(rng));
    const auto xy = bracket(x, y), yz = bracket(y, z), zx = bracket(z, x);
    if (!xy || !yz || !zx) return false;
    const auto a = bracket(*xy, z), b = bracket(*yz, x), c = bracket(*zx, y);
    if (!a || !b || !c) return false;
    if (!is_zero_matrix<Rational>(VecQ(*a + *b + *c))) return false;
  }
  return true;
}

std::vector<std::pair<int, int>> so_basis_pairs(int n) {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= n + 1; ++i)
    for (int j = i + 1; j <= n + 1; ++j) out.emplace_back(i, j);
  return out;
}

MatQ so_vector_element(int n, int i, int j) {
  const int size = n + 1;
  auto eps = [size](int k) { return k == size ? -1 : 1; };
  MatQ m = MatQ::Zero(size, size);
  m(i - 1, j - 1) = eps(j);
  m(j - 1, i - 1) = -eps(i);
  return m;
}

MatrixLieAlgebra so_vector_algebra(int n) {
  if (n < 1 || n > 16) throw SpinModelError("so(n,1) requires 1 <= n <= 16");
  std::vector<MatQ> basis;
  for (auto [i, j] : so_basis_pairs(n)) basis.push_back(so_vector_element(n, i, j));
  return MatrixLieAlgebra("so(" + std::to_string(n) + ",1)", std::move(basis));
}

MatrixLieAlgebra so_pq_algebra(int p, int q) {
  const int size = p + q;
  std::vector<MatQ> basis;
  for (int i = 0; i < size; ++i)
    for (int j = i + 1; j < size; ++j) {
      MatQ m = MatQ::Zero(size, size);
      m(i, j) = j < p ? 1 : -1;
      m(j, i) = i < p ? -1 : 1;
      basis.push_back(m);
    }
  return MatrixLieAlgebra("so(" + std::to_string(p) + "," + std::to_string(q) + ")", std::move(basis));
}

std::vector<MatQ> invariant_forms(const std::vector<MatQ>& generators, int size) {
  // X^T B + B X = 0 is linear in B
  ConstraintSystem sys(static_cast<Eigen::Index>(size) * size);
  for (const auto& x : generators)
    for (int r = 0; r < size; ++r)
      for (int s = 0; s < size; ++s) {
        VecQ row = VecQ::Zero(static_cast<Eigen::Index>(size) * size);
        for (int k = 0; k < size; ++k) {
          if (!is_zero(x(k, r))) row(flat(size, k, s)) += x(k, r);
          if (!is_zero(x(k, s))) row(flat(size, r, k)) += x(k, s);
        }
        sys.add(row);
      }
  return kernel_matrices(sys.kernel_basis(), size);
}

std::vector<MatQ> commutant(const std::vector<MatQ>& generators, int size) {
  ConstraintSystem sys(static_cast<Eigen::Index>(size) * size);
  for (const auto& c : generators) add_commute_constraints(sys, size, c);
  return kernel_matrices(sys.kernel_basis(), size);
}

MatrixLieAlgebra stabilizer_algebra(std::string name, int size, const std::vector<MatQ>& commute_with,
                                    const std::vector<MatQ>& forms, const std::vector<MatQ>& trace_zero_with) {
  ConstraintSystem sys(static_cast<Eigen::Index>(size) * size);
  for (const auto& c : commute_with) add_commute_constraints(sys, size, c);
  for (const auto& b : forms) add_form_constraints(sys, size, b);
  for (const auto& t : trace_zero_with) {
    VecQ row = VecQ::Zero(static_cast<Eigen::Index>(size) * size);
    for (int r = 0; r < size; ++r)
      for (int c = 0; c < size; ++c)
        if (!is_zero(t(r, c))) row(flat(size, c, r)) += t(r, c);
    sys.add(row);
  }
  return MatrixLieAlgebra(std::move(name), kernel_matrices(sys.kernel_basis(), size));
}

MatrixLieAlgebra centralizer(const std::vector<MatQ>& s, const MatrixLieAlgebra& ambient) {
  if (ambient.dimension() == 0) throw SpinModelError("centralizer: empty ambient algebra");
  const int n = ambient.matrix_size();
  const int d = ambient.dimension();
  std::vector<MatQ> blocks;
  for (const auto& x : s) {
    MatQ block(static_cast<Eigen::Index>(n) * n, d);
    for (int b = 0; b < d; ++b) {
      const MatQ c = commutator<Rational>(x, ambient.element(b));
      for (Eigen::Index k = 0; k < c.size(); ++k) block(k, b) = c.data()[k];
    }
    blocks.push_back(std::move(block));
  }
  MatQ k;
  if (blocks.empty()) {
    k = MatQ::Identity(d, d);
  } else {
    ConstraintSystem sys(d);
    for (const auto& b : blocks)
      for (Eigen::Index r = 0; r < b.rows(); ++r) sys.add(b.row(r).transpose());
    k = sys.kernel_basis();
  }
  std::vector<MatQ> basis;
  for (Eigen::Index j = 0; j < k.cols(); ++j) basis.push_back(ambient.from_coordinates(k.col(j)));
  return MatrixLieAlgebra("centralizer in " + ambient.name(), std::move(basis));
}

MatQ fixed_vectors(const std::vector<MatQ>& action, int module_dim) {
  if (action.empty()) return MatQ::Identity(module_dim, module_dim);
  ConstraintSystem sys(module_dim);
  for (const auto& a : action)
    for (Eigen::Index r = 0; r < a.rows(); ++r) sys.add(a.row(r).transpose());
  return sys.kernel_basis();
}

namespace {

// split 3-form on R^7 = R + V + V*, coordinates (x0, x1, x2, x3, y1, y2, y3)
std::array<int, 343> g2_three_form() {
  std::array<int, 343> phi{};
  auto set = [&](int a, int b, int c, int v) {
    const std::array<std::array<int, 3>, 6> perms{{{a, b, c}, {b, c, a}, {c, a, b}, {b, a, c}, {a, c, b}, {c, b, a}}};
    for (int p = 0; p < 6; ++p) phi[static_cast<size_t>(perms[p][0] * 49 + perms[p][1] * 7 + perms[p][2])] = p < 3 ? v : -v;
  };
  set(0, 1, 4, 1);
  set(0, 2, 5, 1);
  set(0, 3, 6, 1);
  set(1, 2, 3, 1);
  set(4, 5, 6, 1);
  return phi;
}

}  // namespace

MatrixLieAlgebra g2_split_algebra() {
  const auto phi = g2_three_form();
  auto at = [&](int a, int b, int c) { return phi[static_cast<size_t>(a * 49 + b * 7 + c)]; };
  ConstraintSystem sys(49);
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j)
      for (int k = j + 1; k < 7; ++k) {
        VecQ row = VecQ::Zero(49);
        for (int l = 0; l < 7; ++l) {
          // phi(X e_i, e_j, e_k) + phi(e_i, X e_j, e_k) + phi(e_i, e_j, X e_k)
          if (at(l, j, k)) row(flat(7, l, i)) += at(l, j, k);
          if (at(i, l, k)) row(flat(7, l, j)) += at(i, l, k);
          if (at(i, j, l)) row(flat(7, l, k)) += at(i, j, l);
        }
        sys.add(row);
      }
  return MatrixLieAlgebra("g2(2)", kernel_matrices(sys.kernel_basis(), 7));
}

MatQ g2_split_form() {
  const auto g2 = g2_split_algebra();
  std::vector<MatQ> sym;
  for (const auto& b : invariant_forms(g2.basis(), 7))
    if (b == b.transpose()) sym.push_back(b);
  if (sym.size() != 1) throw SpinModelError("g2(2): expected a unique invariant symmetric form");
  MatQ b = sym[0];
  if (signature(b).positive < 4) b = -b;
  return b;
}

}  // namespace stdquot
