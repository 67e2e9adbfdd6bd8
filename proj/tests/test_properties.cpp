#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stdquot/groups.hpp"
#include "stdquot/properness.hpp"
#include "stdquot/spinmodel.hpp"
#include "stdquot/weights.hpp"

#include <random>

using namespace stdquot;

namespace {

constexpr std::uint64_t kSeed = 20240601;

Weight random_weight(std::mt19937_64& rng, int rank, int max_sum) {
  Weight w = Weight::zero(rank);
  std::uniform_int_distribution<int> pick(0, rank - 1);
  const int steps = std::uniform_int_distribution<int>(0, max_sum)(rng);
  for (int s = 0; s < steps; ++s) w.coords[static_cast<size_t>(pick(rng))] += 1;
  return w;
}

Family scan_family(const std::string& weyl_type) { return weyl_type[0] == 'D' ? Family::D : Family::B; }

}  // namespace

TEST_CASE("dimension identities on random weights") {
  std::mt19937_64 rng(kSeed);
  const std::vector<std::pair<std::string, int>> systems = {{"A3", 4}, {"A4", 3}, {"B3", 3}, {"C3", 3},
                                                            {"D4", 3}, {"G2", 3}, {"B4", 2}};
  for (const auto& [tag, max_sum] : systems) {
    const auto rs = RootSystem::parse(tag);
    for (int trial = 0; trial < 50; ++trial) {
      const Weight lambda = random_weight(rng, rs.rank(), max_sum);
      const auto ms = full_weight_multiset(rs, lambda);
      CHECK_MESSAGE(ms.total() == weyl_dim(rs, lambda).convert_to<long>(), tag);
      CHECK(ms.entries.at(lambda) == 1);
      // multiplicities are constant on Weyl orbits
      for (const auto& [mu, m] : ms.entries)
        for (int i = 0; i < rs.rank(); ++i) {
          const auto it = ms.entries.find(rs.reflect(mu, i));
          REQUIRE(it != ms.entries.end());
          CHECK(it->second == m);
        }
      // the dominant part peels back to the single highest weight
      const auto peeled = peel_highest_weights(rs, ms);
      REQUIRE(peeled.size() == 1);
      CHECK(peeled[0] == std::pair{lambda, 1L});
    }
  }
}

TEST_CASE("bracket closure and Jacobi for all matrix models") {
  std::mt19937_64 rng(kSeed);
  for (const auto& name : embedding_names()) {
    const auto emb = named_embedding(name);
    CHECK_MESSAGE(emb.source->closed_under_bracket(), name);
    CHECK_MESSAGE(emb.target->closed_under_bracket(), name);
    CHECK(emb.source->jacobi_check(rng, 100));
    CHECK(emb.target->jacobi_check(rng, 100));
  }
  for (const auto& [p, q] : std::vector<std::pair<int, int>>{{2, 1}, {4, 3}, {4, 4}, {8, 1}}) {
    const auto so = so_pq_algebra(p, q);
    CHECK(so.closed_under_bracket());
    CHECK(so.jacobi_check(rng, 100));
  }
  const auto g2 = g2_split_algebra();
  CHECK(g2.closed_under_bracket());
  CHECK(g2.jacobi_check(rng, 100));
}

TEST_CASE("properness is invariant under Weyl translates") {
  std::mt19937_64 rng(kSeed);
  const auto cat = Catalog::load(Catalog::default_path());
  for (const auto& c : cat.cases()) {
    const int r = c.G.real_rank();
    const auto aH = SplitSubspace::from_basis(r, c.aH_basis);
    const bool base = is_proper(c.weyl_type, aH, SplitSubspace::from_basis(r, c.aL_basis)).proper;
    const ClassicalWeyl weyl(scan_family(c.weyl_type), r);
    std::uniform_int_distribution<std::uint64_t> pick(0, weyl.size() - 1);
    for (int k = 0; k < 20; ++k) {
      const auto w = pick(rng);
      std::vector<VecQ> moved;
      for (const auto& v : c.aL_basis) moved.push_back(weyl.apply(w, v));
      CHECK_MESSAGE(is_proper(c.weyl_type, aH, SplitSubspace::from_basis(r, moved)).proper == base, c.label());
    }
  }
}

TEST_CASE("dual cases agree") {
  const auto cat = Catalog::load(Catalog::default_path());
  int pairs = 0;
  for (const auto& c : cat.cases()) {
    if (!c.dual) continue;
    const TripleCase* d = cat.find(*c.dual);
    REQUIRE(d != nullptr);
    CHECK(d->G.name == c.G.name);
    // H and L are interchanged, possibly under an isomorphic name
    CHECK(d->dH == c.dL);
    CHECK(d->dL == c.dH);
    CHECK(d->H.real_rank() == c.L.real_rank());
    CHECK(d->L.real_rank() == c.H.real_rank());
    const int r = c.G.real_rank();
    CHECK(rank<Rational>(SplitSubspace::from_basis(r, d->aH_basis).matrix()) ==
          rank<Rational>(SplitSubspace::from_basis(r, c.aL_basis).matrix()));
    const auto rc = verify_table_row(c);
    const auto rd = verify_table_row(*d);
    CHECK_MESSAGE(rc.proper == rd.proper, c.label());
    CHECK_MESSAGE(rc.cocompact == rd.cocompact, c.label());
    ++pairs;
  }
  CHECK(pairs >= 2);
  CHECK(pairs % 2 == 0);
}
