#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stdquot/weights.hpp"

#include <algorithm>
#include <set>

using namespace stdquot;

namespace {

Weight fundamental(const RootSystem& rs, int i) {
  Weight w = Weight::zero(rs.rank());
  w.coords[static_cast<size_t>(i)] = 1;
  return w;
}

std::vector<long> fundamental_dims(const RootSystem& rs) {
  std::vector<long> out;
  for (int i = 0; i < rs.rank(); ++i) out.push_back(weyl_dim(rs, fundamental(rs, i)).convert_to<long>());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("Weyl group orders") {
  CHECK(weyl_group_order(RootSystem::make(Family::A, 3)) == 24);
  CHECK(weyl_group_order(RootSystem::make(Family::B, 3)) == 48);
  CHECK(weyl_group_order(RootSystem::make(Family::C, 4)) == 384);
  CHECK(weyl_group_order(RootSystem::make(Family::D, 4)) == 192);
  CHECK(weyl_group_order(RootSystem::make(Family::G, 2)) == 12);
  CHECK(weyl_group_order(RootSystem::make(Family::F, 4)) == 1152);
  CHECK(weyl_group_order(RootSystem::make(Family::E, 6)) == 51840);
  CHECK(weyl_group_order(RootSystem::make(Family::E, 7)) == 2903040);
  CHECK(weyl_group_order(RootSystem::make(Family::E, 8)) == 696729600);
}

TEST_CASE("positive root counts") {
  CHECK(RootSystem::make(Family::A, 4).positive_roots().size() == 10);
  CHECK(RootSystem::make(Family::B, 4).positive_roots().size() == 16);
  CHECK(RootSystem::make(Family::D, 5).positive_roots().size() == 20);
  CHECK(RootSystem::make(Family::E, 8).positive_roots().size() == 120);
  CHECK(RootSystem::make(Family::G, 2).positive_roots().size() == 6);
  const auto bc = RootSystem::make(Family::BC, 2);
  CHECK_FALSE(bc.reduced());
  CHECK(bc.positive_roots().size() == 6);
}

TEST_CASE("Cartan matrices") {
  for (auto [f, r] : {std::pair{Family::A, 5}, {Family::B, 4}, {Family::C, 3}, {Family::D, 6}, {Family::E, 7},
                      {Family::F, 4}, {Family::G, 2}}) {
    const auto rs = RootSystem::make(f, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        if (i == j)
          CHECK(rs.cartan()(i, j) == 2);
        else
          CHECK(rs.cartan()(i, j) <= 0);
      }
  }
  CHECK(RootSystem::parse("D8").tag() == "D8");
  CHECK_THROWS(RootSystem::parse("Q3"));
  CHECK_THROWS(RootSystem::make(Family::E, 9));
}

TEST_CASE("fundamental representation dimensions") {
  CHECK(fundamental_dims(RootSystem::make(Family::A, 3)) == std::vector<long>{4, 4, 6});
  CHECK(fundamental_dims(RootSystem::make(Family::B, 3)) == std::vector<long>{7, 8, 21});
  CHECK(fundamental_dims(RootSystem::make(Family::C, 3)) == std::vector<long>{6, 14, 14});
  CHECK(fundamental_dims(RootSystem::make(Family::D, 4)) == std::vector<long>{8, 8, 8, 28});
  CHECK(fundamental_dims(RootSystem::make(Family::G, 2)) == std::vector<long>{7, 14});
  CHECK(fundamental_dims(RootSystem::make(Family::F, 4)) == std::vector<long>{26, 52, 273, 1274});
  CHECK(fundamental_dims(RootSystem::make(Family::E, 6)) == std::vector<long>{27, 27, 78, 351, 351, 2925});
  CHECK(fundamental_dims(RootSystem::make(Family::E, 8)) ==
        std::vector<long>{248, 3875, 30380, 147250, 2450240, 6696000, 146325270, 6899079264});
}

TEST_CASE("harmonic polynomial dimensions from weyl_dim") {
  // V_j for so(5): C(4+j, j) - C(2+j, j-2); V_2 has dimension 14
  const auto b2 = RootSystem::make(Family::B, 2);
  VecQ e(2);
  e << 2, 0;
  CHECK(weyl_dim(b2, b2.from_coordinates(e)) == 14);
  e << 1, 1;
  CHECK(weyl_dim(b2, b2.from_coordinates(e)) == 10);
}

TEST_CASE("Freudenthal multiplicities") {
  const auto a2 = RootSystem::make(Family::A, 2);
  const auto adj = freudenthal_multiplicities(a2, Weight({1, 1}));
  CHECK(adj.entries.at(Weight({0, 0})) == 2);
  const auto b2 = RootSystem::make(Family::B, 2);
  const auto full = full_weight_multiset(b2, b2.rho());
  CHECK(full.total() == weyl_dim(b2, b2.rho()).convert_to<long>());
  const auto g2 = RootSystem::make(Family::G, 2);
  for (int i = 0; i < 2; ++i) {
    const auto ms = full_weight_multiset(g2, fundamental(g2, i));
    const long zero = ms.entries.count(Weight::zero(2)) ? ms.entries.at(Weight::zero(2)) : 0;
    CHECK(zero == (ms.total() == 7 ? 1 : 2));
  }
}

TEST_CASE("peeling a tensor square") {
  const auto a1 = RootSystem::make(Family::A, 1);
  const auto v = full_weight_multiset(a1, Weight({2}));
  WeightMultiset sq;
  for (const auto& [a, ma] : v.entries)
    for (const auto& [b, mb] : v.entries) sq.add(Weight({a.coords[0] + b.coords[0]}), ma * mb);
  const auto peeled = peel_highest_weights(a1, sq);
  REQUIRE(peeled.size() == 3);
  CHECK(peeled[0] == std::pair{Weight({4}), 1L});
  CHECK(peeled[1] == std::pair{Weight({2}), 1L});
  CHECK(peeled[2] == std::pair{Weight({0}), 1L});
}

TEST_CASE("orbits and dominant representatives") {
  const auto b3 = RootSystem::make(Family::B, 3);
  CHECK(b3.orbit(fundamental(b3, 0)).size() == 6);
  const Weight w = b3.reflect(b3.reflect(b3.rho(), 0), 1);
  CHECK(b3.dominant_representative(w) == b3.rho());
  CHECK(b3.inner(b3.simple_root_weight(0), b3.simple_root_weight(0)) > 0);
}

TEST_CASE("signed permutation enumeration") {
  const ClassicalWeyl d8(Family::D, 8);
  CHECK(d8.size() == 5160960);
  const ClassicalWeyl b3(Family::B, 3);
  CHECK(b3.size() == 48);
  for (std::uint64_t i = 0; i < b3.size(); ++i) CHECK(b3.index_of(b3.element(i)) == i);
  VecQ v(3);
  v << 1, 2, 3;
  std::set<std::vector<Rational>> images;
  for (std::uint64_t i = 0; i < b3.size(); ++i) {
    const VecQ w = b3.apply(i, v);
    images.insert({w(0), w(1), w(2)});
  }
  CHECK(images.size() == 48);
  const ClassicalWeyl d3(Family::D, 3);
  for (std::uint64_t i = 0; i < d3.size(); ++i) {
    const VecQ w = d3.apply(i, v);
    int negatives = 0;
    for (int k = 0; k < 3; ++k) negatives += w(k) < 0;
    CHECK(negatives % 2 == 0);
  }
}
