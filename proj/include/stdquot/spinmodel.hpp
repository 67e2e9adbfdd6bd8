// Exact matrix models: Clifford algebras, spin(n,1), target algebras and
// embeddings between them.
#pragma once

#include "stdquot/properness.hpp"
#include "stdquot/rational.hpp"

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace stdquot {

class SpinModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CliffordAlgebra {
  int p = 0;
  int q = 0;
  std::vector<MatQ> generators;  // first p square to +1, last q to -1

  [[nodiscard]] int size() const { return generators.empty() ? 1 : static_cast<int>(generators[0].rows()); }
  [[nodiscard]] bool relations_hold() const;
};

/// Real matrix generators of Cl(p,q) for p + q <= 9.
CliffordAlgebra clifford_algebra(int p, int q);

/// Span of the products g_i g_j, i < j.
std::vector<MatQ> bivectors(const CliffordAlgebra& cl);

class MatrixLieAlgebra {
 public:
  MatrixLieAlgebra(std::string name, std::vector<MatQ> basis);

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] int matrix_size() const { return size_; }
  [[nodiscard]] int dimension() const { return static_cast<int>(basis_.size()); }
  [[nodiscard]] const std::vector<MatQ>& basis() const { return basis_; }
  [[nodiscard]] const MatQ& element(int i) const { return basis_[static_cast<size_t>(i)]; }

  /// Coordinates of x in the basis, or nullopt when x is outside the span.
  [[nodiscard]] std::optional<VecQ> coordinates(const MatQ& x) const;
  /// Coordinates without the membership check.
  [[nodiscard]] VecQ coordinates_unchecked(const MatQ& x) const;
  [[nodiscard]] MatQ from_coordinates(const VecQ& c) const;

  /// [e_a, e_b] in coordinates, as a dim x dim^2 matrix (column a*dim+b).
  [[nodiscard]] MatQ structure_constants() const;
  /// B_ab = tr(e_a e_b).
  [[nodiscard]] MatQ trace_form() const;
  /// Matrix of ad(x) on coordinates; x must normalize the span.
  [[nodiscard]] MatQ adjoint(const MatQ& x) const;

  [[nodiscard]] bool closed_under_bracket() const;
  /// Exact Jacobi identity on random basis triples.
  [[nodiscard]] bool jacobi_check(std::mt19937_64& rng, int triples) const;

 private:
  std::string name_;
  int size_ = 0;
  std::vector<MatQ> basis_;
  std::vector<Eigen::Index> pivots_;  // flattened entries that determine coordinates
  MatQ pivot_inverse_;
};

/// Index pairs (i, j), 1 <= i < j <= n + 1, ordering the standard basis of so(n,1).
std::vector<std::pair<int, int>> so_basis_pairs(int n);

/// spin(n,1) realized in the even Clifford algebra: b_ij = g_i g_j / 2 and
/// b_{i,n+1} = g_i / 2 with g the generators of Cl(n,0).
MatrixLieAlgebra spin_lie_algebra(int n);
/// so(n,1) on R^{n+1} with the form diag(1,...,1,-1), same basis ordering.
MatrixLieAlgebra so_vector_algebra(int n);
/// Matrix of b_ij in the vector model.
MatQ so_vector_element(int n, int i, int j);
/// Standard so(p,q) on R^{p+q}, form diag(1_p, -1_q).
MatrixLieAlgebra so_pq_algebra(int p, int q);
/// Split real form of G2 on R^7 as the stabilizer of a split 3-form.
MatrixLieAlgebra g2_split_algebra();
/// Symmetric form on R^7 preserved by g2_split_algebra().
MatQ g2_split_form();

/// Invariant bilinear forms: all B with X^T B + B X = 0 for the given X.
std::vector<MatQ> invariant_forms(const std::vector<MatQ>& generators, int size);
/// Matrices commuting with every generator.
std::vector<MatQ> commutant(const std::vector<MatQ>& generators, int size);

/// {X : [X,c] = 0 for c in commute_with, X^T B + B X = 0 for B in forms,
///  tr(T X) = 0 for T in trace_zero_with}.
MatrixLieAlgebra stabilizer_algebra(std::string name, int size, const std::vector<MatQ>& commute_with,
                                    const std::vector<MatQ>& forms, const std::vector<MatQ>& trace_zero_with = {});

/// Elements Y of the ambient algebra with [s,Y] = 0 for every matrix s.
MatrixLieAlgebra centralizer(const std::vector<MatQ>& s, const MatrixLieAlgebra& ambient);
/// Joint kernel of the action matrices, one basis vector per column.
MatQ fixed_vectors(const std::vector<MatQ>& action, int module_dim);

struct Eigenspace {
  Rational value;
  MatQ basis;  // columns
};

/// Exact eigenspace decomposition of a matrix diagonalizable over Q.
/// Eigenvalues are located numerically, rationalized and then certified by
/// exact kernel dimensions that must add up to the size.
std::vector<Eigenspace> rational_eigenspaces(const MatQ& m);

/// How the target group sits on its standard module.
struct TargetInfo {
  std::string group;           // e.g. "SO(4,4)"
  int split_rank = 0;          // real rank of the target
  int module_multiplicity = 1; // 1 real, 2 complex, 4 quaternionic module
  bool complex_structure = false;  // target is a realified complex algebra
};

struct EmbeddingMap {
  std::string name;
  std::string description;
  std::shared_ptr<const MatrixLieAlgebra> source;
  std::shared_ptr<const MatrixLieAlgebra> target;
  std::vector<MatQ> images;  // image of each source basis element, as target matrices
  MatQ matrix;               // target coordinates of the images
  TargetInfo info;
  int n = 0;                 // source is spin(n,1) / so(n,1)
  bool spinor_source = true;

  /// Builds the coordinate matrix and checks bracket compatibility and injectivity.
  void verify();
};

/// Names shipped in the embedding library.
std::vector<std::string> embedding_names();
EmbeddingMap named_embedding(const std::string& name);

/// Sorted absolute eigenvalues of a hyperbolic element h of the target,
/// truncated to the split rank; eigenvalues must be rational.
VecQ split_coordinates(const MatQ& h, const TargetInfo& info);
/// Image of a split subspace of the source (source coordinates) in the
/// target's split coordinates.
SplitSubspace split_subspace_image(const EmbeddingMap& emb, const std::vector<VecQ>& a_src);

struct DoubleCoverReport {
  bool kernel_element_is_minus_identity = false;
  bool kernel_acts_trivially = false;
  bool identity_ok = false;
  int exact_samples = 0;
  int numeric_samples = 0;
  double worst_form_residual = 0;
  bool ok = false;
};

/// Checks that exp of bivectors in Cl(n,1) act on the vector span by
/// isometries of the (n,1) form, and that exp(pi g1 g2) = -1 acts trivially.
DoubleCoverReport double_cover_check(int n, int samples, std::uint64_t seed);

void write_embedding(std::ostream& out, const EmbeddingMap& emb);
EmbeddingMap read_embedding(std::istream& in);

}  // namespace stdquot
