#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stdquot/groups.hpp"
#include "stdquot/harmonics.hpp"

#include <memory>

using namespace stdquot;

namespace {

Integer binom(int a, int b) {
  if (b < 0 || a < b) return 0;
  Integer r = 1;
  for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

long accounted(const BranchingTable& t) {
  long total = 0;
  for (const auto& [j, m] : t.spherical) total += m * harmonic_dimension(t.n, j).convert_to<long>();
  for (const auto& e : t.nonspherical) total += e.multiplicity * e.dim.convert_to<long>();
  return total;
}

// Same embedding after an invertible rational change of target basis.
EmbeddingMap conjugated(const EmbeddingMap& emb, const MatQ& p) {
  const MatQ pi = inverse(p);
  std::vector<MatQ> basis;
  for (const auto& x : emb.target->basis()) basis.push_back(p * x * pi);
  EmbeddingMap out = emb;
  out.target = std::make_shared<MatrixLieAlgebra>(emb.target->name() + "^p", basis);
  for (auto& x : out.images) x = p * x * pi;
  out.verify();
  return out;
}

}  // namespace

TEST_CASE("spherical labels") {
  for (int n = 2; n <= 8; ++n) {
    const auto rs = source_root_system(n);
    for (int j = 0; j <= 10; ++j) {
      const auto l = spherical_label(n, j);
      CHECK(l.dim == binom(n + j, j) - binom(n + j - 2, j - 2));
      CHECK(l.laplace_eigenvalue == -static_cast<long>(j) * (j + n - 1));
      CHECK(l.casimir_eigenvalue == casimir_scale(n) * j * (j + n - 1));
      VecQ e = VecQ::Zero(rs.rank());
      e(0) = j;
      CHECK_MESSAGE(weyl_dim(rs, rs.from_coordinates(e)) == l.dim, "n=" << n << " j=" << j);
    }
  }
  CHECK(spherical_label(4, 2).dim == 14);
  CHECK(spherical_label(4, 2).laplace_eigenvalue == -10);
  CHECK(source_root_system(4).tag() == "B2");
  CHECK(source_root_system(5).tag() == "D3");
}

TEST_CASE("branching of the shipped embeddings") {
  struct Expect {
    const char* name;
    std::map<int, long> spherical;
    int k;
    int gphi;
    const char* indicator;
  };
  // vector-rep bookkeeping: so(p+q) = so(n,1) + so(rest) + R^{n+1} x R^{rest}, and R^{n+1} = V_1
  const std::vector<Expect> expected = {
      {"spin41-in-so44", {{0, 3}, {1, 3}}, 3, 28, "FULL_ZARISKI_DENSE"},
      {"so41-in-so44", {{0, 3}, {1, 3}}, 3, 28, "FULL_ZARISKI_DENSE"},
      {"so41-in-so43", {{0, 1}, {1, 2}}, 2, 21, "FULL_ZARISKI_DENSE"},
      {"so31-in-so32", {{1, 1}}, 2, 10, "FULL_ZARISKI_DENSE"},
      {"spin41-in-su22", {{1, 1}}, 2, 15, "FULL_ZARISKI_DENSE"},
      {"spin61-in-sostar8", {{1, 1}}, 2, 28, "FULL_ZARISKI_DENSE"},
      {"spin81-in-so88", {}, 2, 36, "CENTRALIZER_ONLY"},
      {"spin71-in-so8c", {}, 2, 28, "CENTRALIZER_ONLY"},
      {"so71-in-so8c", {}, 2, 28, "CENTRALIZER_ONLY"},
      {"so41-diag", {}, 2, 10, "INTERMEDIATE(10)"},
  };
  for (const auto& ex : expected) {
    const auto emb = named_embedding(ex.name);
    const auto t = isotypic_decomposition(emb);
    CHECK_MESSAGE(t.spherical == ex.spherical, ex.name);
    CHECK_MESSAGE(bending_k(t) == ex.k, ex.name);
    CHECK(accounted(t) == t.target_dim);
    CHECK(t.accounted_dim() == t.target_dim);
    const auto gp = g_phi(emb);
    CHECK_MESSAGE(gp.dimension == ex.gphi, ex.name);
    CHECK(gp.subalgebra);
    CHECK(gp.submodule);
    CHECK_MESSAGE(rigidity_indicator(emb, t).str() == ex.indicator, ex.name);
  }
}

TEST_CASE("complex targets report real multiplicities") {
  const auto t = isotypic_decomposition(named_embedding("spin71-in-so8c"));
  CHECK(t.complex_target);
  REQUIRE(t.nonspherical.size() == 1);
  CHECK(t.nonspherical[0].multiplicity == 2);
  CHECK(t.nonspherical[0].label == "(1,1,0,0)");
}

TEST_CASE("identity embeddings have no spherical part") {
  for (int n = 3; n <= 8; ++n) {
    const auto emb = named_embedding("spin" + std::to_string(n) + "1-identity");
    const auto t = isotypic_decomposition(emb);
    for (const auto& [j, m] : t.spherical) CHECK((j == 0 || m == 0));
    CHECK(rigidity_indicator(emb, t).kind == RigidityKind::CentralizerOnly);
    CHECK(bending_k(t) == 2);
  }
  CHECK(named_embedding("identity-spin51").name == "spin51-identity");
}

TEST_CASE("both methods agree") {
  for (const auto& name : embedding_names()) {
    const auto emb = named_embedding(name);
    const auto cas = casimir_method(emb);
    const auto t = isotypic_decomposition(emb);
    CHECK_MESSAGE(cas.spherical == t.spherical, name);
    long weight_total = 0;
    for (const auto& [w, m] : weight_method(emb))
      weight_total += m * weyl_dim(source_root_system(emb.n), w).convert_to<long>();
    // the weight method runs over the complexification
    CHECK_MESSAGE(weight_total == t.target_dim, name);
  }
}

TEST_CASE("k is invariant under change of target basis") {
  const auto emb = named_embedding("so41-in-so43");
  const int size = emb.target->matrix_size();
  MatQ p = MatQ::Identity(size, size);
  for (int i = 0; i + 1 < size; ++i) p(i, i + 1) = Rational(i + 1, 3);
  p(size - 1, 0) = Rational(-1, 2);
  REQUIRE(rank<Rational>(p) == size);
  const auto c = conjugated(emb, p);
  const auto t0 = isotypic_decomposition(emb);
  const auto t1 = isotypic_decomposition(c);
  CHECK(t1.spherical == t0.spherical);
  CHECK(bending_k(t1) == bending_k(t0));
  CHECK(g_phi(c).dimension == g_phi(emb).dimension);
}

TEST_CASE("cross-check against stored verdicts") {
  const auto cat = Catalog::load(Catalog::default_path());
  const auto r52 = cross_check_case(cat.lookup("5-2"));
  CHECK(r52.status == CrossCheckStatus::Pass);
  CHECK(r52.computed == "FULL_ZARISKI_DENSE");
  const auto r51 = cross_check_case(cat.lookup("5-1", 3));
  CHECK(r51.status == CrossCheckStatus::Pass);
  CHECK(r51.computed == "CENTRALIZER_ONLY");
  CHECK(cross_check_case(cat.lookup("1")).status == CrossCheckStatus::NotDecidable);
  CHECK(cross_check_case(cat.lookup("5-1", 2)).status != CrossCheckStatus::Mismatch);
}
