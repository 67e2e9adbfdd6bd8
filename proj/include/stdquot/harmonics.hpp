// Decomposition of a target Lie algebra under spin(n,1): spherical
// multiplicities [g:V_j], the subalgebra g^phi, the bending parameter k and
// rigidity indicators.
#pragma once

#include "stdquot/groups.hpp"
#include "stdquot/spinmodel.hpp"
#include "stdquot/weights.hpp"

#include <map>

namespace stdquot {

class HarmonicsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Casimir normalization: the Casimir built from the spinor trace form acts
/// on V_j by casimir_scale(n) * j(j+n-1).
Rational casimir_scale(int n);

struct SphericalLabel {
  int n = 0;
  int j = 0;
  Integer dim = 0;
  long laplace_eigenvalue = 0;  // -j(j+n-1)
  Rational casimir_eigenvalue = 0;
};

SphericalLabel spherical_label(int n, int j);
/// C(n+j, j) - C(n+j-2, j-2).
Integer harmonic_dimension(int n, int j);
/// Root system of so(n+1, C): B_{n/2} or D_{(n+1)/2}.
RootSystem source_root_system(int n);

struct NonsphericalEntry {
  Weight highest_weight;  // fundamental-weight coordinates of source_root_system(n)
  std::string label;      // e-coordinates, e.g. "(1,1,0)"
  long multiplicity = 0;
  Integer dim = 0;
  Rational casimir = 0;
};

struct BranchingTable {
  std::string embedding;
  int n = 0;
  long target_dim = 0;
  std::map<int, long> spherical;  // j -> real multiplicity
  std::vector<NonsphericalEntry> nonspherical;
  int jmax = -1;                  // largest j with nonzero entry, -1 if none
  bool complex_target = false;    // multiplicities are real; complex ones are half

  [[nodiscard]] Integer accounted_dim() const;
  [[nodiscard]] std::map<int, long> complex_spherical() const;
};

/// Action of the source basis on target coordinates by ad o dphi.
std::vector<MatQ> adjoint_action(const EmbeddingMap& emb);

struct CasimirResult {
  std::map<int, long> spherical;
  std::map<Rational, long> nonspherical_dim;  // Casimir value -> dimension
  std::map<int, MatQ> spherical_components;   // j -> isotypic component (target coordinates)
};

CasimirResult casimir_method(const EmbeddingMap& emb);
/// Highest weights with multiplicities from the joint weights of the source Cartan.
std::vector<std::pair<Weight, long>> weight_method(const EmbeddingMap& emb);

/// Runs both methods and fails hard when they disagree.
BranchingTable isotypic_decomposition(const EmbeddingMap& emb);

struct GPhiResult {
  std::vector<VecQ> basis;  // target coordinates
  int dimension = 0;
  int rounds = 0;
  bool subalgebra = false;
  bool submodule = false;
};

GPhiResult g_phi(const EmbeddingMap& emb);

int bending_k(const BranchingTable& table);

enum class RigidityKind { CentralizerOnly, FullZariskiDense, Intermediate };

struct RigidityIndicator {
  RigidityKind kind = RigidityKind::CentralizerOnly;
  int gphi_dim = 0;
  bool lower_bound_only = false;  // n = 2
  [[nodiscard]] std::string str() const;
};

RigidityIndicator rigidity_indicator(const EmbeddingMap& emb, const BranchingTable& table);

enum class CrossCheckStatus { Pass, Mismatch, Informational, NotDecidable };

struct CrossCheckReport {
  std::string label;
  CrossCheckStatus status = CrossCheckStatus::NotDecidable;
  std::string computed;  // indicator, or the rule applied
  std::string detail;
  [[nodiscard]] std::string status_str() const;
};

CrossCheckReport cross_check_case(const TripleCase& c);

}  // namespace stdquot
