#include "stdquot/report.hpp"

#include <algorithm>
#include <sstream>

namespace stdquot {

namespace {

// values stay on one line in both renderings
std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

std::string status_name(ItemStatus s) {
  switch (s) {
    case ItemStatus::Pass: return "PASS";
    case ItemStatus::Fail: return "FAIL";
    case ItemStatus::Informational: return "INFORMATIONAL";
    case ItemStatus::NotDecidable: return "NOT-DECIDABLE";
  }
  return "?";
}

ReportItem& ReportItem::add(std::string key, std::string value) {
  fields.emplace_back(std::move(key), one_line(std::move(value)));
  return *this;
}

bool Report::any_fail() const {
  return std::any_of(items.begin(), items.end(), [](const ReportItem& i) { return i.status == ItemStatus::Fail; });
}

std::string Report::render_text() const {
  std::ostringstream out;
  out << tool_version << "\n";
  out << "command:   " << command << "\n";
  out << "catalog:   " << catalog_hash << "\n";
  out << "seed:      " << seed << "\n";
  out << "precision: " << precision << " digits\n\n";
  std::size_t width = 4;
  for (const auto& i : items) width = std::max(width, i.id.size());
  std::size_t pass = 0, fail = 0, other = 0;
  for (const auto& i : items) {
    out << i.id << std::string(width - i.id.size() + 2, ' ') << status_name(i.status) << "\n";
    for (const auto& [k, v] : i.fields) out << std::string(width + 2, ' ') << k << ": " << v << "\n";
    (i.status == ItemStatus::Pass ? pass : i.status == ItemStatus::Fail ? fail : other)++;
  }
  out << "\n" << pass << " pass, " << fail << " fail, " << other << " other\n";
  return out.str();
}

std::string Report::render_kv() const {
  std::ostringstream out;
  out << "report.tool=" << tool_version << "\n";
  out << "report.command=" << one_line(command) << "\n";
  out << "report.catalog_sha256=" << catalog_hash << "\n";
  out << "report.seed=" << seed << "\n";
  out << "report.precision_digits=" << precision << "\n";
  out << "report.items=" << items.size() << "\n";
  for (const auto& i : items) {
    out << "item." << i.id << ".status=" << status_name(i.status) << "\n";
    for (const auto& [k, v] : i.fields) out << "item." << i.id << "." << k << "=" << v << "\n";
  }
  out << "report.any_fail=" << (any_fail() ? "true" : "false") << "\n";
  return out.str();
}

std::vector<std::pair<std::string, std::string>> parse_kv(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    out.emplace_back(line.substr(0, eq), line.substr(eq + 1));
  }
  return out;
}

}  // namespace stdquot
