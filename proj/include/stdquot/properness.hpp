// Properness and cocompactness of L acting on G/H.
//
// L acts properly on G/H iff w.a_L and a_H meet only in 0 for every element
// w of the restricted Weyl group of G.  A proper action is cocompact iff
// d(G) = d(H) + d(L).
#pragma once

#include "stdquot/groups.hpp"
#include "stdquot/weights.hpp"

#include <chrono>
#include <cstdint>
#include <optional>

namespace stdquot {

struct SplitSubspace {
  int ambient_rank = 0;
  std::vector<VecQ> basis;

  static SplitSubspace from_basis(int ambient_rank, std::vector<VecQ> basis);
  [[nodiscard]] int dimension() const { return static_cast<int>(basis.size()); }
  [[nodiscard]] MatQ matrix() const;  // basis vectors as columns
  [[nodiscard]] bool contains(const VecQ& v) const;
};

struct PropernessWitness {
  std::uint64_t weyl_index = 0;
  VecQ vector;  // nonzero, in w.a_L and in a_H
};

struct PropernessCertificate {
  bool proper = false;
  std::optional<PropernessWitness> witness;
  std::uint64_t checked_count = 0;
  std::uint64_t group_order = 0;
};

class PropernessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScanOptions {
  unsigned threads = 0;  // 0: hardware concurrency
  /// Restrict the scan to [begin, end); the default covers the group.
  std::uint64_t begin = 0;
  std::uint64_t end = UINT64_MAX;
};

PropernessCertificate is_proper(const std::string& weyl_type, const SplitSubspace& aH,
                                const SplitSubspace& aL, const ScanOptions& opts = {});

/// Merges certificates of disjoint partitions of the same scan.
PropernessCertificate merge(const PropernessCertificate& a, const PropernessCertificate& b);

/// Independent re-verification of a negative verdict's witness.
bool verify_witness(const std::string& weyl_type, const SplitSubspace& aH, const SplitSubspace& aL,
                    const PropernessWitness& w);

bool is_cocompact(int dG, int dH, int dL, bool proper);

struct RowReport {
  std::string label;
  bool proper = false;
  bool cocompact = false;
  PropernessCertificate certificate;
  int dG = 0, dH = 0, dL = 0;
  std::chrono::duration<double> elapsed{};
};

RowReport verify_table_row(const TripleCase& c, const ScanOptions& opts = {});

}  // namespace stdquot
