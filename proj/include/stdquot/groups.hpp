// Real reductive groups and the catalog of proper, cocompact triples.
#pragma once

#include "stdquot/rational.hpp"
#include "stdquot/weights.hpp"

#include <optional>
#include <string>
#include <vector>

namespace stdquot {

enum class GroupFamily { SU, U, SO, Spin, Sp, SOStar, SOComplex, SpinComplex, G2Split };

/// One simple (or compact/abelian) factor such as SU(4,2) or SO*(8).
/// For the complex families `p` is the matrix size and `q` is unused.
struct SimpleFactor {
  GroupFamily family;
  int p = 0;
  int q = 0;

  [[nodiscard]] std::string name() const;
};

struct RestrictedRoot {
  VecQ root;  // in the split Cartan coordinates of the factor
  int multiplicity = 1;
};

class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RealGroupDescriptor {
  std::string name;
  std::vector<SimpleFactor> factors;

  /// Parses names like "SU(4,2)", "SO*(8)", "SO(8,C)", "G2(2)", "SO(4,1)xSO(3)".
  static RealGroupDescriptor parse(std::string_view name);

  [[nodiscard]] int real_rank() const;
  /// Complexified type, e.g. "A3" or "D4+D4"; "T1" marks a central torus.
  [[nodiscard]] std::string complex_type() const;
  /// Restricted root system tag, e.g. "BC2"; factors joined by '+'; "" if compact.
  [[nodiscard]] std::string restricted_tag() const;
  /// Positive restricted roots with multiplicities (block coordinates per factor).
  [[nodiscard]] std::vector<RestrictedRoot> restricted_roots() const;
  /// real_rank + sum of multiplicities of positive restricted roots.
  [[nodiscard]] int restricted_dim() const;
  /// Closed-form family formula (2pq for SU(p,q), pq for SO(p,q), ...).
  [[nodiscard]] int closed_form_dim() const;
};

/// Dimension of the Riemannian symmetric space; throws GroupError when the
/// restricted-root count and the closed form disagree.
int symmetric_space_dim(const RealGroupDescriptor& g);

struct Verdicts {
  bool q1 = false;
  bool q2 = false;
  bool q3 = false;
  friend bool operator==(const Verdicts&, const Verdicts&) = default;
};

struct CaseRef {
  std::string id;
  std::optional<int> n;

  [[nodiscard]] std::string str() const;
  static CaseRef parse(std::string_view text);
  friend bool operator==(const CaseRef&, const CaseRef&) = default;
};

struct TripleCase {
  std::string id;
  std::optional<int> n;
  RealGroupDescriptor G, H, L;
  bool l_center = false;
  std::string weyl_type;  // restricted Weyl type of G, e.g. "D8"
  int dG = 0, dH = 0, dL = 0;
  std::vector<VecQ> aH_basis, aL_basis;
  Verdicts verdicts;
  std::optional<CaseRef> dual;
  std::string embedding;  // shipped spin(n,1) embedding for the L column, if any
  std::string note;

  [[nodiscard]] CaseRef ref() const { return {id, n}; }
  [[nodiscard]] std::string label() const { return ref().str(); }
};

/// The 26 case labels, in table order.
const std::vector<std::string>& case_labels();
/// Reference classification lists.
bool reference_q1(const std::string& id);
bool reference_q2(const std::string& id);

struct ValidationReport {
  std::size_t case_count = 0;      // distinct labels
  std::size_t instance_count = 0;  // records including all n
  std::vector<std::string> failures;
  [[nodiscard]] bool ok() const { return failures.empty(); }
};

class Catalog {
 public:
  static Catalog load(const std::string& path);
  static Catalog parse(std::string_view text, const std::string& origin = "<memory>");
  static std::string default_path();

  [[nodiscard]] const std::vector<TripleCase>& cases() const { return cases_; }
  /// Exact lookup.  A missing `n` picks the minimal shipped instance.
  [[nodiscard]] const TripleCase& lookup(const std::string& id, std::optional<int> n = std::nullopt) const;
  [[nodiscard]] const TripleCase* find(const CaseRef& ref) const;
  [[nodiscard]] const std::string& sha256() const { return hash_; }
  [[nodiscard]] ValidationReport validate() const;

  std::vector<TripleCase>& mutable_cases() { return cases_; }

 private:
  std::vector<TripleCase> cases_;
  std::string hash_;
};

std::string sha256_hex(std::string_view data);

}  // namespace stdquot
