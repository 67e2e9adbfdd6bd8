#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stdquot/bending.hpp"

#include <string>

using namespace stdquot;

namespace {

std::string genus2_path() { return std::string(STDQUOT_DATA_DIR) + "/genus2.cfg"; }

MatQ diag(std::initializer_list<int> xs) {
  MatQ m = MatQ::Zero(static_cast<Eigen::Index>(xs.size()), static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (int x : xs) m(i, i) = x, ++i;
  return m;
}

const char* kSmall = R"(generators a
stable b
relator b a B A
edge b a
matrix a = [2 0; 0 1/2]
matrix b = [3 0; 0 1/3]
bend b = [1 0; 0 -1]
t 0, 1
)";

int error_line(const std::string& text) {
  try {
    (void)parse_bending_config(text);
  } catch (const ConfigError& e) {
    return e.line;
  }
  return -1;
}

}  // namespace

TEST_CASE("words") {
  const Word w = parse_word("b1 a1 B1 a2^-1");
  REQUIRE(w.size() == 4);
  CHECK(w[0] == Letter{"b1", 1});
  CHECK(w[2] == Letter{"b1", -1});
  CHECK(w[3] == Letter{"a2", -1});
  CHECK(format_word(inverse_word(parse_word("a b"))) == format_word(parse_word("B A")));
  CHECK(parse_word("").empty());
}

TEST_CASE("config parsing") {
  const auto d = parse_bending_config(kSmall);
  CHECK(d.generators == std::vector<std::string>{"a"});
  CHECK(d.stable_letters == std::vector<std::string>{"b"});
  CHECK(d.matrix_size() == 2);
  CHECK(d.t_grid == std::vector<Rational>{0, 1});
  CHECK(d.images.at("a")(1, 1) == Rational(1, 2));

  std::string bad = kSmall;
  bad.replace(bad.find("[2 0"), 4, "[2 x");
  CHECK(error_line(bad) == 5);
  CHECK(error_line("generators a\nfrobnicate 3\n") == 2);
  CHECK(error_line("generators a\nmatrix a = [1 0; 0 1; 1 1]\n") == 2);
  // relator a b A B with non-commuting images
  CHECK_THROWS_AS(parse_bending_config("generators a\nstable b\nrelator b a B A\nedge b a\n"
                                       "matrix a = [1 1; 0 1]\nmatrix b = [1 0; 1 1]\nt 0\n"),
                  ConfigError);
  CHECK_THROWS_AS(load_bending_config("/nonexistent.cfg"), ConfigError);
}

TEST_CASE("genus two bending") {
  const auto d = load_bending_config(genus2_path());
  CHECK(d.precision == 50);
  REQUIRE(d.bend_vectors.size() == 1);

  const auto b0 = bend(d, d.bend_vectors, 0);
  CHECK(b0.exact);
  for (const auto& [name, m] : d.images) CHECK(b0.images.at(name) == to_real(m));
  CHECK(b0.max_residual == 0);

  for (const Rational t : {Rational(1, 10), Rational(1, 2), Rational(1)}) {
    const auto bt = bend(d, d.bend_vectors, t);
    CHECK_FALSE(bt.exact);
    CHECK(bt.max_residual <= 1e-9);
    CHECK(bt.max_residual <= 1e-40);
    // generators other than the stable letter are untouched
    CHECK(bt.images.at("a1") == to_real(d.images.at("a1")));
  }

  // phi_1(b1) = phi(b1) exp(v) with v = diag(1,-2,1)
  const auto b1 = bend(d, d.bend_vectors, 1);
  MatR ev = MatR::Zero(3, 3);
  ev(0, 0) = exp(Real(1));
  ev(1, 1) = exp(Real(-2));
  ev(2, 2) = exp(Real(1));
  const MatR want = to_real(d.images.at("b1")) * ev;
  CHECK(max_abs(MatR(b1.images.at("b1") - want)) < Real("1e-45"));
}

TEST_CASE("cocycle identity") {
  const auto d = load_bending_config(genus2_path());
  const MatR v = to_real(d.bend_vectors[0]);
  for (const auto& [t, s] : std::vector<std::pair<Rational, Rational>>{
           {Rational(1, 2), Rational(1, 2)}, {Rational(1, 10), Rational(2, 5)}, {Rational(-1, 3), Rational(1)}}) {
    const auto a = bend(d, d.bend_vectors, t);
    const auto b = bend(d, d.bend_vectors, t + s);
    const MatR rhs = a.images.at("b1") * expm(MatR(to_real(s) * v));
    CHECK(max_abs(MatR(b.images.at("b1") - rhs)) < Real("1e-40"));
  }
}

TEST_CASE("precondition violation") {
  const auto d = load_bending_config(genus2_path());
  MatQ v = MatQ::Zero(3, 3);
  v(0, 1) = 1;
  CHECK_THROWS_AS(bend(d, {v}, 1), BendingError);
  CHECK_THROWS_AS(bend(d, {}, 1), BendingError);
}

TEST_CASE("closure growth") {
  const auto d = load_bending_config(genus2_path());
  std::vector<MatQ> gens;
  for (const auto& [name, m] : d.images) gens.push_back(m);
  const auto c0 = closure_growth_certificate(gens);
  CHECK(c0.form_dimension == 1);
  CHECK(c0.form_exact);
  CHECK(c0.lie_span_dimension == 3);

  const auto b = bend(d, d.bend_vectors, Rational(1, 2));
  std::vector<MatR> bent;
  for (const auto& [name, m] : b.images) bent.push_back(m);
  const auto c1 = closure_growth_certificate(bent);
  CHECK(c1.form_dimension == 0);
  CHECK(c1.escaped);
  CHECK(c1.lie_span_dimension == 8);
}

TEST_CASE("invariant forms") {
  CHECK(invariant_form_dimension(std::vector<MatQ>{MatQ::Identity(3, 3)}) == 6);
  CHECK(invariant_form_dimension(std::vector<MatQ>{diag({2, 1, 1})}) == 3);
  const auto d = load_bending_config(genus2_path());
  std::vector<MatQ> gens, conj;
  for (const auto& [name, m] : d.images) gens.push_back(m);
  MatQ p(3, 3);
  p << 1, 2, 0, 0, 1, 3, 1, 0, 1;
  const MatQ pi = inverse(p);
  for (const auto& g : gens) conj.push_back(p * g * pi);
  CHECK(invariant_form_dimension(conj) == invariant_form_dimension(gens));
  std::vector<MatR> real;
  for (const auto& g : conj) real.push_back(to_real(g));
  CHECK(invariant_form_dimension(real) == 1);
}

TEST_CASE("split torus closures") {
  const auto full = eta_split_torus({{2, 3}}, 2);
  CHECK(full.dimension == 2);
  const auto line = eta_split_torus({{2, 4}}, 2);
  CHECK(line.dimension == 1);
  CHECK(eta_split_torus({{2, 4}, {3, 9}}, 2).dimension == 1);
  // no character of Z^3 vanishes on both, so the closure is the whole torus
  CHECK(eta_split_torus({{6, 1, 2}, {1, 5, 1}}, 3).dimension == 3);
  CHECK(eta_split_torus({{2, 1, 2}, {1, 5, 1}}, 3).dimension == 2);
  CHECK(eta_split_torus({{1, 1}}, 2).dimension == 0);
}

TEST_CASE("SO(2) closures") {
  const auto sixth = eta_so2({Rotation::from_angle(Rational(1, 3))}, 1);
  CHECK_FALSE(sixth.full);
  CHECK(sixth.order == 6);
  CHECK(eta_so2({Rotation::from_cosine(Rational(3, 5), Rational(4, 5))}, 1).full);
  CHECK(eta_so2({Rotation::from_cosine(Rational(0), Rational(1))}, 1).order == 4);
  // angle pi/3 at t = 1/m generates a cyclic group of order 6m
  for (int m = 1; m <= 50; ++m) {
    const auto c = eta_so2({Rotation::from_angle(Rational(1, 3))}, Rational(1, m));
    CHECK_FALSE(c.full);
    CHECK(c.order == 6 * m);
  }
  const auto two = eta_so2({Rotation::from_angle(Rational(1, 2)), Rotation::from_angle(Rational(1, 3))}, 1);
  CHECK(two.order == 12);
}

TEST_CASE("SU(2) closures") {
  VecQ x(3), y(3), z(3);
  x << 1, 0, 0;
  y << 0, 1, 0;
  z << 0, 0, 1;
  const auto kill = eta_su2_kill({{x, 1}, {y, Rational(3, 2)}});
  CHECK(kill.proper_subgroup);
  CHECK(kill.t == 1);
  CHECK(kill.survivors == std::vector<std::size_t>{1});
  CHECK(kill.closure.rfind("finite cyclic of order 2", 0) == 0);

  const std::vector<Real> rates = {Real(1), sqrt(Real(2)), sqrt(Real(3))};
  const auto samples = eta_su2_span({x, y, z}, rates, {Real("0.5"), Real("0.7")});
  REQUIRE(samples.size() == 2);
  for (const auto& s : samples) {
    CHECK(s.active == 3);
    CHECK(s.lie_span == 3);
  }
}

TEST_CASE("demos are stable") {
  for (const auto& name : eta_demo_names()) {
    const auto a = eta_demo(name);
    const auto b = eta_demo(name);
    CHECK_MESSAGE(a.ok, name);
    REQUIRE(a.rows.size() == b.rows.size());
    for (size_t i = 0; i < a.rows.size(); ++i) {
      CHECK(a.rows[i].key == b.rows[i].key);
      CHECK(a.rows[i].value == b.rows[i].value);
    }
  }
  CHECK_THROWS(eta_demo("nope"));
}
