// Root systems, Weyl groups and weight combinatorics.
//
// Weights are integer vectors in the fundamental-weight basis.  Inner
// products are taken in the coordinate model of the simple roots, so every
// quantity here is an exact rational.
#pragma once

#include "stdquot/rational.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace stdquot {

enum class Family { A, B, C, D, E, F, G, BC };

std::string family_name(Family f);
std::optional<Family> parse_family(std::string_view s);

struct Weight {
  std::vector<long> coords;

  Weight() = default;
  explicit Weight(std::vector<long> c) : coords(std::move(c)) {}
  static Weight zero(int rank) { return Weight(std::vector<long>(static_cast<size_t>(rank), 0)); }

  [[nodiscard]] int rank() const { return static_cast<int>(coords.size()); }
  [[nodiscard]] bool dominant() const;
  [[nodiscard]] std::string str() const;

  auto operator<=>(const Weight&) const = default;
};

struct WeightMultiset {
  std::map<Weight, long> entries;

  [[nodiscard]] long total() const;
  void add(const Weight& w, long m);
};

class RootSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RootSystem {
 public:
  /// Irreducible system of the given family and rank in its standard
  /// coordinate model (A_n lives in R^{n+1}, E6/E7 inside the E8 model).
  static RootSystem make(Family family, int rank);
  /// Parses tags like "B2", "D8", "BC3", "G2".
  static RootSystem parse(std::string_view tag);

  [[nodiscard]] Family family() const { return family_; }
  [[nodiscard]] int rank() const { return rank_; }
  [[nodiscard]] bool reduced() const { return family_ != Family::BC; }
  [[nodiscard]] std::string tag() const;

  /// A(i,j) = <alpha_i, alpha_j^vee>.
  [[nodiscard]] const Eigen::MatrixXi& cartan() const { return cartan_; }
  /// Simple roots as rows, in the coordinate model.
  [[nodiscard]] const MatQ& simple_roots() const { return simple_; }
  /// Positive roots in simple-root coordinates (including 2e_i for BC).
  [[nodiscard]] const std::vector<Eigen::VectorXi>& positive_roots() const { return positive_; }
  /// Positive coroots in simple-coroot coordinates, aligned with positive_roots().
  /// Coroots of the reduced positive roots (the doubled roots of BC are omitted).
  [[nodiscard]] const std::vector<Eigen::VectorXi>& positive_coroots() const { return coroots_; }
  [[nodiscard]] std::size_t classical_positive_root_count() const;

  /// Ambient coordinates of a root given in simple-root coordinates.
  [[nodiscard]] VecQ root_vector(const Eigen::VectorXi& simple_coords) const;
  /// Fundamental weights as rows in the coordinate model.
  [[nodiscard]] const MatQ& fundamental_weights() const { return fundamental_; }

  [[nodiscard]] Rational inner(const Weight& a, const Weight& b) const;
  [[nodiscard]] Weight rho() const;
  /// alpha_i expressed in the fundamental-weight basis (row i of the Cartan matrix).
  [[nodiscard]] Weight simple_root_weight(int i) const;
  /// Positive root (simple-root coordinates) expressed in the weight basis.
  [[nodiscard]] Weight root_weight(const Eigen::VectorXi& simple_coords) const;

  [[nodiscard]] Weight from_coordinates(const VecQ& v) const;
  [[nodiscard]] VecQ to_coordinates(const Weight& w) const;

  [[nodiscard]] Weight reflect(const Weight& w, int i) const;
  [[nodiscard]] Weight dominant_representative(const Weight& w) const;
  [[nodiscard]] std::vector<Weight> orbit(const Weight& w) const;

 private:
  void finish();

  Family family_ = Family::A;
  int rank_ = 0;
  Eigen::MatrixXi cartan_;
  MatQ simple_;
  MatQ fundamental_;
  MatQ weight_form_;  // Gram matrix of the fundamental weights
  std::vector<Eigen::VectorXi> positive_;
  std::vector<Eigen::VectorXi> coroots_;
};

/// |W| from the classical closed forms.
Integer weyl_group_order(const RootSystem& rs);

/// Weyl group of a classical family acting on coordinates by (signed)
/// permutations.  Elements are addressed by a dense index so that scans can
/// be split into independent ranges.
///
/// Index layout: index = perm_rank * sign_count + sign_rank, where
/// perm_rank is the lexicographic rank of the permutation and sign_rank
/// enumerates the admissible sign masks (all masks for B/C/BC, even masks for
/// D, only the empty mask for A).
class ClassicalWeyl {
 public:
  explicit ClassicalWeyl(const RootSystem& rs);
  ClassicalWeyl(Family family, int coordinate_count);

  [[nodiscard]] std::uint64_t size() const { return perm_count_ * sign_count_; }
  [[nodiscard]] int dimension() const { return n_; }
  [[nodiscard]] Family family() const { return family_; }

  struct Element {
    std::vector<int> perm;   // (w v)[perm[i]] = sign_i * v[i]
    std::uint32_t signs = 0; // bit i set => coordinate i is negated
  };

  [[nodiscard]] Element element(std::uint64_t index) const;
  [[nodiscard]] std::uint64_t index_of(const Element& e) const;
  [[nodiscard]] VecQ apply(std::uint64_t index, const VecQ& v) const;
  static VecQ apply(const Element& e, const VecQ& v);

  /// Calls f(index, element) for every index in [begin, end).  Elements are
  /// generated incrementally; the group is never materialized.
  void for_each(std::uint64_t begin, std::uint64_t end,
                const std::function<bool(std::uint64_t, const Element&)>& f) const;

 private:
  [[nodiscard]] std::uint32_t sign_mask(std::uint64_t sign_rank) const;

  Family family_;
  int n_;
  std::uint64_t perm_count_;
  std::uint64_t sign_count_;
};

/// Weyl dimension formula; throws for non-dominant weights or BC.
Integer weyl_dim(const RootSystem& rs, const Weight& hw);

/// Dominant weights of V(hw) with multiplicities (Freudenthal recursion).
WeightMultiset freudenthal_multiplicities(const RootSystem& rs, const Weight& hw,
                                          long dimension_budget = 1'000'000);

/// Every weight of V(hw) with multiplicity (Weyl-orbit expansion).
WeightMultiset full_weight_multiset(const RootSystem& rs, const Weight& hw,
                                    long dimension_budget = 1'000'000);

/// Highest weights of the irreducible constituents of a weight multiset
/// (peeling the highest remaining dominant weight).  Throws if the multiset
/// is not a character.
std::vector<std::pair<Weight, long>> peel_highest_weights(const RootSystem& rs,
                                                          WeightMultiset weights);

}  // namespace stdquot
