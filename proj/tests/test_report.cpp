#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stdquot/report.hpp"

#include <map>

using namespace stdquot;

namespace {

Report sample() {
  Report r;
  r.tool_version = "1.0.0";
  r.catalog_hash = "abc123";
  r.command = "table verify --case 6";
  r.seed = 20240601;
  r.precision = 50;
  ReportItem a;
  a.id = "6";
  a.status = ItemStatus::Pass;
  a.add("proper", "true").add("weyl_checked", "5160960");
  ReportItem b;
  b.id = "1";
  b.status = ItemStatus::NotDecidable;
  b.add("detail", "needs cup product");
  r.items = {a, b};
  return r;
}

}  // namespace

TEST_CASE("status names") {
  CHECK(status_name(ItemStatus::Pass) == "PASS");
  CHECK(status_name(ItemStatus::Fail) == "FAIL");
  CHECK(status_name(ItemStatus::Informational) == "INFORMATIONAL");
  CHECK(status_name(ItemStatus::NotDecidable) == "NOT-DECIDABLE");
}

TEST_CASE("kv round trip") {
  const auto r = sample();
  const auto kv = parse_kv(r.render_kv());
  std::map<std::string, std::string> m(kv.begin(), kv.end());
  CHECK(m.size() == kv.size());
  CHECK(m.at("report.tool") == "1.0.0");
  CHECK(m.at("report.catalog_sha256") == "abc123");
  CHECK(m.at("report.seed") == "20240601");
  CHECK(m.at("report.precision_digits") == "50");
  CHECK(m.at("report.items") == "2");
  CHECK(m.at("item.6.status") == "PASS");
  CHECK(m.at("item.6.weyl_checked") == "5160960");
  CHECK(m.at("item.1.status") == "NOT-DECIDABLE");
  CHECK(m.at("item.1.detail") == "needs cup product");
  CHECK(m.at("report.any_fail") == "false");
}

TEST_CASE("text rendering carries the same fields") {
  const auto r = sample();
  const auto text = r.render_text();
  for (const auto& item : r.items) {
    CHECK(text.find(item.id) != std::string::npos);
    CHECK(text.find(status_name(item.status)) != std::string::npos);
    for (const auto& [k, v] : item.fields) {
      CHECK(text.find(k) != std::string::npos);
      CHECK(text.find(v) != std::string::npos);
    }
  }
  CHECK(text.find("abc123") != std::string::npos);
}

TEST_CASE("any_fail") {
  auto r = sample();
  CHECK_FALSE(r.any_fail());
  r.items[1].status = ItemStatus::Fail;
  CHECK(r.any_fail());
  CHECK(r.render_kv().find("report.any_fail=true") != std::string::npos);
}

TEST_CASE("rendering is deterministic") {
  CHECK(sample().render_kv() == sample().render_kv());
  CHECK(sample().render_text() == sample().render_text());
}
