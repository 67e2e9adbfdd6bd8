// Command reports, rendered as a text table or as flat key=value lines.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace stdquot {

enum class ItemStatus { Pass, Fail, Informational, NotDecidable };

std::string status_name(ItemStatus s);

struct ReportItem {
  std::string id;
  ItemStatus status = ItemStatus::Pass;
  std::vector<std::pair<std::string, std::string>> fields;

  ReportItem& add(std::string key, std::string value);
};

struct Report {
  std::string tool_version;
  std::string catalog_hash;
  std::string command;
  std::uint64_t seed = 0;
  unsigned precision = 0;
  std::vector<ReportItem> items;

  [[nodiscard]] bool any_fail() const;
  [[nodiscard]] std::string render_text() const;
  [[nodiscard]] std::string render_kv() const;
};

/// Parses render_kv output back into (key, value) pairs, in order.
std::vector<std::pair<std::string, std::string>> parse_kv(const std::string& text);

}  // namespace stdquot
