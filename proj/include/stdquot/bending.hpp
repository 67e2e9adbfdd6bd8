// Bending deformations on HNN presentation data, closure-growth tests and
// exact torus / SU(2) closure instances.
#pragma once

#include "stdquot/numeric.hpp"
#include "stdquot/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace stdquot {

class BendingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Config file problem; `line` is 1-based, 0 when not tied to a line.
class ConfigError : public BendingError {
 public:
  ConfigError(int line, std::string field, const std::string& message);
  int line;
  std::string field;
};

/// A letter is a symbol and an exponent of +1 or -1.
struct Letter {
  std::string symbol;
  int power = 1;
  friend bool operator==(const Letter&, const Letter&) = default;
};
using Word = std::vector<Letter>;

/// Space separated tokens; "A1" or "a1^-1" is the inverse of "a1".
Word parse_word(std::string_view text);
std::string format_word(const Word& w);
Word inverse_word(const Word& w);

struct BendingDatum {
  std::vector<std::string> generators;     // surface group generators
  std::vector<std::string> stable_letters;
  std::vector<Word> relators;
  std::vector<std::vector<Word>> edge_words;  // one list per stable letter
  std::map<std::string, MatQ> images;         // every generator and stable letter
  std::vector<MatQ> bend_vectors;             // one per stable letter, may be empty
  std::vector<Rational> t_grid;
  unsigned precision = 50;
  double tolerance = 1e-9;

  [[nodiscard]] int matrix_size() const;
  /// Throws BendingError when a relator fails or a stable letter breaks the HNN pattern.
  void validate() const;
};

BendingDatum parse_bending_config(std::string_view text);
BendingDatum load_bending_config(const std::string& path);

MatQ evaluate_exact(const std::map<std::string, MatQ>& images, const Word& w);
MatR evaluate(const std::map<std::string, MatR>& images, const Word& w);

struct DeformedRepresentation {
  Rational t = 0;
  std::map<std::string, MatR> images;
  bool exact = false;  // t = 0: images are the exact input
  std::vector<double> relator_residuals;
  double max_residual = 0;
  unsigned precision = 0;
  double tolerance = 0;
};

/// phi_t agrees with phi on the surface group and sends each stable letter
/// tau_i to phi(tau_i) exp(t v_i).
DeformedRepresentation bend(const BendingDatum& d, const std::vector<MatQ>& v, const Rational& t);

struct ClosureCertificate {
  int form_dimension = 0;           // invariant symmetric bilinear forms
  bool form_exact = false;
  std::optional<bool> claimed_form_preserved;
  double claimed_form_residual = 0;
  int lie_span_dimension = 0;       // Lie algebra generated by logs of short words
  int words_used = 0;
  int words_skipped = 0;            // no real logarithm found
  bool escaped = false;             // the invariant form is gone
  std::string status;               // "certificate" or "evidence"
  unsigned precision = 0;
  double rank_threshold = 0;
};

/// Relative singular value threshold used for numeric ranks.
inline constexpr double kRankThreshold = 1e-25;

ClosureCertificate closure_growth_certificate(const std::vector<MatR>& generators,
                                              const std::optional<MatQ>& claimed_form = std::nullopt,
                                              int max_word_length = 4);
ClosureCertificate closure_growth_certificate(const std::vector<MatQ>& generators,
                                              const std::optional<MatQ>& claimed_form = std::nullopt,
                                              int max_word_length = 4);

int invariant_form_dimension(const std::vector<MatQ>& generators);
int invariant_form_dimension(const std::vector<MatR>& generators, double rank_threshold = kRankThreshold);

/// Dimension of the Lie algebra generated by the given matrices, numerically.
int lie_span_dimension(const std::vector<MatR>& xs, double rank_threshold = kRankThreshold);

// ---- closure instances

struct TorusClosure {
  int dimension = 0;        // of the Zariski closure
  int ambient = 0;
  int annihilator_rank = 0;
  std::vector<std::uint64_t> primes;
  bool constant_in_t = true;
};

/// Generators are diagonal elements of a split torus, given by their positive
/// rational diagonal entries.
TorusClosure eta_split_torus(const std::vector<std::vector<Rational>>& generators, int dim);

struct Rotation {
  enum class Form { Angle, Cosine } form = Form::Angle;
  Rational angle = 0;  // multiple of pi
  Rational cos = 1, sin = 0;

  static Rotation from_angle(const Rational& multiple_of_pi);
  static Rotation from_cosine(const Rational& c, const Rational& s);
};

struct So2Closure {
  bool full = false;
  long order = 1;  // when finite
  std::vector<std::string> reasons;
  [[nodiscard]] std::string str() const;
};

So2Closure eta_so2(const std::vector<Rotation>& rotations, const Rational& t);

struct Su2Generator {
  VecQ axis;      // in R^3
  Rational rate;  // exp(tX) rotates by 2 pi rate t
};

struct Su2Kill {
  Rational t;
  std::vector<std::size_t> survivors;
  std::string closure;  // "trivial", "finite cyclic of order m", ...
  bool proper_subgroup = false;
};

Su2Kill eta_su2_kill(const std::vector<Su2Generator>& xs);

struct Su2SpanSample {
  Real t;
  int active = 0;     // generators with exp(tX) != 1
  int lie_span = 0;
};

/// Numeric evidence for generators with real rates; rotations in SO(3).
std::vector<Su2SpanSample> eta_su2_span(const std::vector<VecQ>& axes, const std::vector<Real>& rates,
                                        const std::vector<Real>& t_grid);

struct EtaRow {
  std::string key;
  std::string value;
};

struct EtaDemo {
  std::string name;
  std::vector<EtaRow> rows;
  std::string verdict;
  bool ok = false;
};

std::vector<std::string> eta_demo_names();
EtaDemo eta_demo(const std::string& name);

}  // namespace stdquot
