#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stdquot/groups.hpp"

#include <fstream>
#include <sstream>

using namespace stdquot;

namespace {

// sha256sum of data/catalog.txt
constexpr const char* kCatalogSha256 = "68301cf69d0f75ff42bf256198147b1b4bb7cf000009819ee895b74c60b92980";

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Catalog shipped() { return Catalog::load(Catalog::default_path()); }

bool has_failure(const ValidationReport& r, const std::string& needle) {
  for (const auto& f : r.failures)
    if (f.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("sha256 against known digests") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("catalog hash is pinned") {
  const auto cat = shipped();
  CHECK(cat.sha256() == kCatalogSha256);
  CHECK(sha256_hex(read_file(Catalog::default_path())) == kCatalogSha256);
}

TEST_CASE("shipped catalog validates") {
  const auto rep = shipped().validate();
  for (const auto& f : rep.failures) INFO(f);
  CHECK(rep.ok());
  CHECK(rep.case_count == 26);
  CHECK(rep.instance_count == 38);
  CHECK(case_labels().size() == 26);
}

TEST_CASE("group descriptors") {
  const auto su42 = RealGroupDescriptor::parse("SU(4,2)");
  CHECK(su42.real_rank() == 2);
  CHECK(su42.complex_type() == "A5");
  CHECK(su42.restricted_tag() == "BC2");
  CHECK(symmetric_space_dim(su42) == 16);
  const auto so88 = RealGroupDescriptor::parse("SO(8,8)");
  CHECK(so88.restricted_tag() == "D8");
  CHECK(symmetric_space_dim(so88) == 64);
  CHECK(symmetric_space_dim(RealGroupDescriptor::parse("SO*(8)")) == 12);
  CHECK(symmetric_space_dim(RealGroupDescriptor::parse("SO(8,C)")) == 28);
  CHECK(symmetric_space_dim(RealGroupDescriptor::parse("G2(2)")) == 8);
  CHECK(symmetric_space_dim(RealGroupDescriptor::parse("Sp(2,1)")) == 8);
  CHECK(symmetric_space_dim(RealGroupDescriptor::parse("Spin(8,1)")) == 8);
  const auto prod = RealGroupDescriptor::parse("SO(4,1)xSO(3)");
  CHECK(prod.factors.size() == 2);
  CHECK(prod.real_rank() == 1);
  CHECK(symmetric_space_dim(prod) == 4);
  CHECK_THROWS_AS(RealGroupDescriptor::parse("XY(3)"), GroupError);
  CHECK_THROWS_AS(RealGroupDescriptor::parse("SU(4,2"), GroupError);
}

TEST_CASE("restricted dimension agrees with the closed form") {
  for (const char* name : {"SU(5,3)", "SO(7,3)", "Sp(3,2)", "SO*(10)", "SO(6,C)", "SU(3,3)", "SO(4,4)"}) {
    const auto g = RealGroupDescriptor::parse(name);
    CHECK_MESSAGE(g.restricted_dim() == g.closed_form_dim(), name);
  }
}

TEST_CASE("case references and lookup") {
  CHECK(CaseRef::parse("5-1@3") == CaseRef{"5-1", 3});
  CHECK(CaseRef::parse("6'").str() == "6'");
  const auto cat = shipped();
  CHECK(cat.lookup("6").G.name == "SO(8,8)");
  CHECK(cat.lookup("6").weyl_type == "D8");
  CHECK(cat.lookup("5-2").embedding == "spin41-in-so44");
  CHECK_THROWS_AS((void)cat.lookup("99"), GroupError);
  CHECK_THROWS_AS((void)cat.lookup("6", 2), GroupError);
  CHECK(reference_q1("5-2"));
  CHECK_FALSE(reference_q1("5-1"));
}

TEST_CASE("injected catalog faults are reported") {
  SUBCASE("wrong stored dimension") {
    auto cat = shipped();
    cat.mutable_cases()[0].dG += 1;
    const auto rep = cat.validate();
    CHECK_FALSE(rep.ok());
    CHECK(has_failure(rep, "d(G) stored as"));
  }
  SUBCASE("verdict contradicting the classification") {
    auto cat = shipped();
    auto& c = cat.mutable_cases()[0];
    c.verdicts.q2 = !c.verdicts.q2;
    const auto rep = cat.validate();
    CHECK(has_failure(rep, "q2 != q3"));
    CHECK(has_failure(rep, "q2 differs"));
  }
  SUBCASE("degenerate split Cartan basis") {
    auto cat = shipped();
    auto& c = cat.mutable_cases()[0];
    c.aL_basis[0].setZero();
    CHECK(has_failure(cat.validate(), "aL spans dimension 0"));
  }
  SUBCASE("broken duality link") {
    auto cat = shipped();
    for (auto& c : cat.mutable_cases())
      if (c.dual) {
        c.dual = CaseRef{"12", std::nullopt};
        break;
      }
    CHECK(has_failure(cat.validate(), "does not point back"));
  }
  SUBCASE("missing label") {
    auto cat = shipped();
    auto& cases = cat.mutable_cases();
    cases.erase(std::remove_if(cases.begin(), cases.end(), [](const TripleCase& c) { return c.id == "12"; }),
                cases.end());
    CHECK(has_failure(cat.validate(), "label 12 missing"));
  }
}

TEST_CASE("catalog parse errors") {
  CHECK_THROWS(Catalog::parse("[case 99]\nG = SU(2,2)\n"));
  CHECK_THROWS(Catalog::parse("version = 1\n[case 1]\nn = x\n"));
}
