#include "stdquot/groups.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#ifndef STDQUOT_DATA_DIR
#define STDQUOT_DATA_DIR "data"
#endif

namespace stdquot {

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

VecQ e(int n, int i) {
  VecQ v = VecQ::Zero(n);
  v(i) = 1;
  return v;
}

// positive roots of B/C/BC/D type on n coordinates, with multiplicities
void classical_roots(std::vector<RestrictedRoot>& out, int n, int m_long, int m_short, int m_double) {
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      out.push_back({e(n, i) - e(n, j), m_long});
      out.push_back({e(n, i) + e(n, j), m_long});
    }
  for (int i = 0; i < n; ++i) {
    if (m_short > 0) out.push_back({e(n, i), m_short});
    if (m_double > 0) out.push_back({2 * e(n, i), m_double});
  }
}

int factor_rank(const SimpleFactor& f) {
  switch (f.family) {
    case GroupFamily::SU:
    case GroupFamily::U:
    case GroupFamily::SO:
    case GroupFamily::Spin:
    case GroupFamily::Sp: return std::min(f.p, f.q);
    case GroupFamily::SOStar: return f.p / 4;  // p = 2n, rank floor(n/2)
    case GroupFamily::SOComplex:
    case GroupFamily::SpinComplex: return f.p / 2;
    case GroupFamily::G2Split: return 2;
  }
  return 0;
}

std::string factor_restricted_tag(const SimpleFactor& f) {
  const int r = factor_rank(f);
  if (r == 0) return "";
  const std::string rs = std::to_string(r);
  switch (f.family) {
    case GroupFamily::SU:
    case GroupFamily::U:
    case GroupFamily::Sp: return (f.p == f.q ? "C" : "BC") + rs;
    case GroupFamily::SO:
    case GroupFamily::Spin: return (f.p == f.q ? "D" : "B") + rs;
    case GroupFamily::SOStar: return ((f.p / 2) % 2 == 0 ? "C" : "BC") + rs;
    case GroupFamily::SOComplex:
    case GroupFamily::SpinComplex: return (f.p % 2 == 0 ? "D" : "B") + rs;
    case GroupFamily::G2Split: return "G2";
  }
  return "";
}

std::vector<RestrictedRoot> factor_roots(const SimpleFactor& f) {
  std::vector<RestrictedRoot> out;
  const int r = factor_rank(f);
  if (r == 0) return out;
  const int diff = std::abs(f.p - f.q);
  switch (f.family) {
    case GroupFamily::SO:
    case GroupFamily::Spin:
      classical_roots(out, r, 1, diff, 0);
      break;
    case GroupFamily::SU:
    case GroupFamily::U:
      classical_roots(out, r, 2, 2 * diff, 1);
      break;
    case GroupFamily::Sp:
      classical_roots(out, r, 4, 4 * diff, 3);
      break;
    case GroupFamily::SOStar:
      classical_roots(out, r, 4, (f.p / 2) % 2 == 0 ? 0 : 4, 1);
      break;
    case GroupFamily::SOComplex:
    case GroupFamily::SpinComplex:
      classical_roots(out, r, 2, f.p % 2 == 0 ? 0 : 2, 0);
      break;
    case GroupFamily::G2Split: {
      const auto g2 = RootSystem::make(Family::G, 2);
      for (const auto& c : g2.positive_roots()) out.push_back({g2.root_vector(c), 1});
      break;
    }
  }
  if (r == 1 && (f.family == GroupFamily::SO || f.family == GroupFamily::Spin) && f.p == f.q) {
    out.clear();  // SO(1,1) is a split torus
  }
  return out;
}

std::string factor_complex_type(const SimpleFactor& f) {
  switch (f.family) {
    case GroupFamily::SU: return "A" + std::to_string(f.p + f.q - 1);
    case GroupFamily::U: return "A" + std::to_string(f.p + f.q - 1) + "+T1";
    case GroupFamily::SO:
    case GroupFamily::Spin: {
      const int m = f.p + f.q;
      if (m == 2) return "T1";
      return (m % 2 ? "B" : "D") + std::to_string(m / 2);
    }
    case GroupFamily::Sp: return "C" + std::to_string(f.p + f.q);
    case GroupFamily::SOStar: return f.p == 2 ? "T1" : "D" + std::to_string(f.p / 2);
    case GroupFamily::SOComplex:
    case GroupFamily::SpinComplex: {
      const std::string t = (f.p % 2 ? "B" : "D") + std::to_string(f.p / 2);
      return t + "+" + t;
    }
    case GroupFamily::G2Split: return "G2";
  }
  return "";
}

}  // namespace

std::string SimpleFactor::name() const {
  const std::string pq = "(" + std::to_string(p) + "," + std::to_string(q) + ")";
  switch (family) {
    case GroupFamily::SU: return "SU" + pq;
    case GroupFamily::U: return "U" + pq;
    case GroupFamily::SO: return q == 0 ? "SO(" + std::to_string(p) + ")" : "SO" + pq;
    case GroupFamily::Spin: return "Spin" + pq;
    case GroupFamily::Sp: return "Sp" + pq;
    case GroupFamily::SOStar: return "SO*(" + std::to_string(p) + ")";
    case GroupFamily::SOComplex: return "SO(" + std::to_string(p) + ",C)";
    case GroupFamily::SpinComplex: return "Spin(" + std::to_string(p) + ",C)";
    case GroupFamily::G2Split: return "G2(2)";
  }
  return "?";
}

RealGroupDescriptor RealGroupDescriptor::parse(std::string_view text) {
  RealGroupDescriptor g;
  g.name = trim(std::string(text));
  static const std::regex factor_re(R"(^(SU|U|SO\*|SO|Spin|Sp|G2)\((\d+)(?:,(\d+|C))?\)$)");
  std::string rest = g.name;
  std::vector<std::string> parts;
  size_t start = 0;
  for (size_t i = 0; i <= rest.size(); ++i) {
    if (i == rest.size() || rest[i] == 'x') {
      parts.push_back(trim(rest.substr(start, i - start)));
      start = i + 1;
    }
  }
  for (const auto& part : parts) {
    std::smatch m;
    if (!std::regex_match(part, m, factor_re)) throw GroupError("cannot parse group name '" + part + "'");
    const std::string fam = m[1];
    const int p = std::stoi(m[2]);
    const std::string second = m[3];
    SimpleFactor f{GroupFamily::SO, p, 0};
    if (fam == "G2") {
      if (p != 2 || !second.empty()) throw GroupError("only the split form G2(2) is supported");
      f = {GroupFamily::G2Split, 2, 0};
    } else if (fam == "SO*") {
      if (!second.empty() || p % 2) throw GroupError("SO*(2n) expects an even size");
      f = {GroupFamily::SOStar, p, 0};
    } else if (second == "C") {
      if (fam == "SO") f = {GroupFamily::SOComplex, p, 0};
      else if (fam == "Spin") f = {GroupFamily::SpinComplex, p, 0};
      else throw GroupError("complex form not supported for '" + part + "'");
    } else {
      const int q = second.empty() ? 0 : std::stoi(second);
      if (fam == "SU") f = {GroupFamily::SU, p, q};
      else if (fam == "U") f = {GroupFamily::U, p, q};
      else if (fam == "SO") f = {GroupFamily::SO, p, q};
      else if (fam == "Spin") f = {GroupFamily::Spin, p, q};
      else if (fam == "Sp") f = {GroupFamily::Sp, p, q};
    }
    g.factors.push_back(f);
  }
  return g;
}

int RealGroupDescriptor::real_rank() const {
  int r = 0;
  for (const auto& f : factors) r += factor_rank(f);
  return r;
}

std::string RealGroupDescriptor::complex_type() const {
  std::string out;
  for (const auto& f : factors) out += (out.empty() ? "" : "+") + factor_complex_type(f);
  return out;
}

std::string RealGroupDescriptor::restricted_tag() const {
  std::string out;
  for (const auto& f : factors) {
    const auto t = factor_restricted_tag(f);
    if (t.empty()) continue;
    out += (out.empty() ? "" : "+") + t;
  }
  return out;
}

std::vector<RestrictedRoot> RealGroupDescriptor::restricted_roots() const {
  // block-diagonal coordinates across factors
  std::vector<RestrictedRoot> out;
  const int total = real_rank();
  int offset = 0;
  for (const auto& f : factors) {
    const auto roots = factor_roots(f);
    const int r = factor_rank(f);
    for (const auto& rr : roots) {
      VecQ v = VecQ::Zero(total + (f.family == GroupFamily::G2Split ? 1 : 0));
      v.segment(offset, rr.root.size()) = rr.root;
      out.push_back({v, rr.multiplicity});
    }
    offset += r;
  }
  return out;
}

int RealGroupDescriptor::restricted_dim() const {
  int d = real_rank();
  for (const auto& r : restricted_roots()) d += r.multiplicity;
  return d;
}

int RealGroupDescriptor::closed_form_dim() const {
  int d = 0;
  for (const auto& f : factors) {
    switch (f.family) {
      case GroupFamily::SU:
      case GroupFamily::U: d += 2 * f.p * f.q; break;
      case GroupFamily::SO:
      case GroupFamily::Spin: d += f.p * f.q; break;
      case GroupFamily::Sp: d += 4 * f.p * f.q; break;
      case GroupFamily::SOStar: {
        const int n = f.p / 2;
        d += n * (n - 1);
        break;
      }
      case GroupFamily::SOComplex:
      case GroupFamily::SpinComplex: d += f.p * (f.p - 1) / 2; break;
      case GroupFamily::G2Split: d += 8; break;
    }
  }
  return d;
}

int symmetric_space_dim(const RealGroupDescriptor& g) {
  const int a = g.restricted_dim();
  const int b = g.closed_form_dim();
  if (a != b)
    throw GroupError("symmetric space dimension of " + g.name + ": restricted roots give " +
                     std::to_string(a) + ", closed form gives " + std::to_string(b));
  return a;
}

// ---------------------------------------------------------------------------

std::string CaseRef::str() const { return n ? id + "@" + std::to_string(*n) : id; }

CaseRef CaseRef::parse(std::string_view text) {
  const std::string s = trim(std::string(text));
  const auto at = s.find('@');
  if (at == std::string::npos) return {s, std::nullopt};
  return {s.substr(0, at), std::stoi(s.substr(at + 1))};
}

const std::vector<std::string>& case_labels() {
  static const std::vector<std::string> labels = {
      "1", "1'-1", "1'-2", "2-1", "2-2", "3", "4-1", "4-2", "4'", "5-1", "5-2", "5'", "6",
      "6'", "7", "7'", "8", "8'", "9", "9'", "10", "10'", "11", "11'", "12", "12'"};
  return labels;
}

bool reference_q1(const std::string& id) {
  static const std::set<std::string> s = {"1",  "1'-2", "2-2", "3",  "4-1", "4-2", "4'",
                                          "5-2", "7'",  "10",  "10'", "11", "12'"};
  return s.count(id) > 0;
}

bool reference_q2(const std::string& id) {
  static const std::set<std::string> s = {"1'-2", "2-2", "3", "4-2", "4'", "5-2", "7'", "10", "11", "12'"};
  return s.count(id) > 0;
}

namespace {

// lower bound on n for parametrized rows; 0 means the row has no parameter
int min_n(const std::string& id) {
  static const std::map<std::string, int> m = {{"1", 1},   {"1'-1", 2}, {"2-1", 2}, {"3", 1},
                                               {"4-1", 2}, {"4'", 1},   {"5-1", 2}, {"5'", 1}};
  const auto it = m.find(id);
  return it == m.end() ? 0 : it->second;
}

bool parse_bool(const std::string& v, const std::string& where) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw GroupError(where + ": expected true/false, got '" + v + "'");
}

std::vector<VecQ> parse_basis(const std::string& v, const std::string& where) {
  std::vector<VecQ> out;
  if (trim(v).empty()) return out;
  std::stringstream rows(v);
  std::string row;
  while (std::getline(rows, row, ';')) {
    std::stringstream cells(row);
    std::vector<Rational> xs;
    std::string cell;
    while (cells >> cell) {
      try {
        xs.push_back(parse_rational(cell));
      } catch (const ExactError& e) {
        throw GroupError(where + ": " + e.what());
      }
    }
    VecQ vec(static_cast<Eigen::Index>(xs.size()));
    for (size_t i = 0; i < xs.size(); ++i) vec(static_cast<Eigen::Index>(i)) = xs[i];
    out.push_back(vec);
  }
  return out;
}

}  // namespace

std::string Catalog::default_path() {
  if (const char* env = std::getenv("STDQUOT_CATALOG")) return env;
  return std::string(STDQUOT_DATA_DIR) + "/catalog.txt";
}

Catalog Catalog::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GroupError("cannot open catalog '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

Catalog Catalog::parse(std::string_view text, const std::string& origin) {
  Catalog cat;
  cat.hash_ = sha256_hex(text);
  std::stringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  TripleCase* cur = nullptr;
  std::set<std::string> seen_keys;
  auto where = [&]() { return origin + ":" + std::to_string(lineno); };
  auto finish = [&]() {
    if (!cur) return;
    for (const char* k : {"G", "H", "L", "weyl", "dG", "dH", "dL", "aH", "aL", "q1", "q2", "q3"})
      if (!seen_keys.count(k))
        throw GroupError(origin + ": case " + cur->label() + " is missing field '" + k + "'");
  };
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      finish();
      static const std::regex head(R"(^\[case\s+([^\]\s]+)\]$)");
      std::smatch m;
      if (!std::regex_match(t, m, head)) throw GroupError(where() + ": malformed section header");
      cat.cases_.emplace_back();
      cur = &cat.cases_.back();
      cur->id = m[1];
      seen_keys.clear();
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw GroupError(where() + ": expected 'key = value'");
    const std::string key = trim(t.substr(0, eq));
    const std::string val = trim(t.substr(eq + 1));
    if (!cur) {
      if (key == "version") continue;
      throw GroupError(where() + ": field outside of a [case] section");
    }
    seen_keys.insert(key);
    try {
      if (key == "n") cur->n = std::stoi(val);
      else if (key == "G") cur->G = RealGroupDescriptor::parse(val);
      else if (key == "H") cur->H = RealGroupDescriptor::parse(val);
      else if (key == "L") cur->L = RealGroupDescriptor::parse(val);
      else if (key == "L_center") cur->l_center = parse_bool(val, where());
      else if (key == "weyl") cur->weyl_type = val;
      else if (key == "dG") cur->dG = std::stoi(val);
      else if (key == "dH") cur->dH = std::stoi(val);
      else if (key == "dL") cur->dL = std::stoi(val);
      else if (key == "aH") cur->aH_basis = parse_basis(val, where());
      else if (key == "aL") cur->aL_basis = parse_basis(val, where());
      else if (key == "q1") cur->verdicts.q1 = parse_bool(val, where());
      else if (key == "q2") cur->verdicts.q2 = parse_bool(val, where());
      else if (key == "q3") cur->verdicts.q3 = parse_bool(val, where());
      else if (key == "dual") {
        if (!val.empty()) cur->dual = CaseRef::parse(val);
      } else if (key == "embedding") cur->embedding = val;
      else if (key == "note") cur->note = val;
      else throw GroupError(where() + ": unknown field '" + key + "'");
    } catch (const GroupError&) {
      throw;
    } catch (const std::exception& ex) {
      throw GroupError(where() + ": bad value for '" + key + "': " + ex.what());
    }
  }
  finish();
  return cat;
}

const TripleCase* Catalog::find(const CaseRef& ref) const {
  for (const auto& c : cases_)
    if (c.id == ref.id && c.n == ref.n) return &c;
  return nullptr;
}

const TripleCase& Catalog::lookup(const std::string& id, std::optional<int> n) const {
  const auto& labels = case_labels();
  if (std::find(labels.begin(), labels.end(), id) == labels.end())
    throw GroupError("unknown case id '" + id + "'");
  const int lo = min_n(id);
  if (lo == 0 && n) throw GroupError("case " + id + " has no parameter n");
  if (lo > 0 && n && *n < lo)
    throw GroupError("case " + id + " requires n >= " + std::to_string(lo));
  const TripleCase* best = nullptr;
  for (const auto& c : cases_) {
    if (c.id != id) continue;
    if (n) {
      if (c.n == n) return c;
    } else if (!best || (c.n && best->n && *c.n < *best->n)) {
      best = &c;
    }
  }
  if (best) return *best;
  throw GroupError("case " + id + (n ? " at n=" + std::to_string(*n) : "") + " is not in the catalog");
}

ValidationReport Catalog::validate() const {
  ValidationReport rep;
  std::set<std::string> ids;
  for (const auto& c : cases_) {
    ids.insert(c.id);
    ++rep.instance_count;
    const std::string who = "case " + c.label() + ": ";
    auto fail = [&](const std::string& msg) { rep.failures.push_back(who + msg); };

    const int lo = min_n(c.id);
    if (lo > 0 && (!c.n || *c.n < lo)) fail("parameter n missing or below " + std::to_string(lo));
    if (lo == 0 && c.n) fail("unexpected parameter n");

    int dims[3] = {-1, -1, -1};
    const RealGroupDescriptor* gs[3] = {&c.G, &c.H, &c.L};
    const int stored[3] = {c.dG, c.dH, c.dL};
    const char* names[3] = {"G", "H", "L"};
    for (int k = 0; k < 3; ++k) {
      try {
        dims[k] = symmetric_space_dim(*gs[k]);
        if (dims[k] != stored[k])
          fail(std::string("d(") + names[k] + ") stored as " + std::to_string(stored[k]) +
               ", computed " + std::to_string(dims[k]));
      } catch (const GroupError& e) {
        fail(e.what());
      }
    }
    if (c.G.factors.size() != 1) fail("G must be simple");
    const std::string wtag = c.G.restricted_tag();
    if (wtag != c.weyl_type) fail("weyl type stored as " + c.weyl_type + ", G has " + wtag);

    const int rg = c.G.real_rank();
    auto check_basis = [&](const std::vector<VecQ>& b, int expected, const char* what) {
      for (const auto& v : b)
        if (v.size() != rg) {
          fail(std::string(what) + " vector length differs from rank(G)=" + std::to_string(rg));
          return;
        }
      MatQ m(rg, static_cast<Eigen::Index>(b.size()));
      for (size_t i = 0; i < b.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = b[i];
      const auto r = b.empty() ? 0 : rank(m);
      if (r != expected || static_cast<int>(b.size()) != expected)
        fail(std::string(what) + " spans dimension " + std::to_string(r) + ", expected real rank " +
             std::to_string(expected));
    };
    check_basis(c.aH_basis, c.H.real_rank(), "aH");
    check_basis(c.aL_basis, c.L.real_rank(), "aL");

    if (dims[0] >= 0 && dims[1] >= 0 && dims[2] >= 0 && dims[0] != dims[1] + dims[2])
      fail("cocompactness identity d(G) = d(H) + d(L) fails");

    if (c.verdicts.q2 != c.verdicts.q3) fail("(Q2) and (Q3) are equivalent, but q2 != q3");
    if (c.verdicts.q1 != reference_q1(c.id)) fail("q1 differs from the classification list");
    if (c.verdicts.q2 != reference_q2(c.id)) fail("q2 differs from the classification list");
    if (c.verdicts.q3 != reference_q2(c.id)) fail("q3 differs from the classification list");

    if (c.dual) {
      const TripleCase* d = find(*c.dual);
      if (!d) {
        fail("dual " + c.dual->str() + " not in catalog");
      } else {
        if (!d->dual || !(*d->dual == c.ref())) fail("dual " + c.dual->str() + " does not point back");
        if (d->G.name != c.G.name || d->H.real_rank() != c.L.real_rank() ||
            d->L.real_rank() != c.H.real_rank())
          fail("dual " + c.dual->str() + " is not an H/L interchange");
      }
    }
  }
  rep.case_count = ids.size();
  const std::set<std::string> expected(case_labels().begin(), case_labels().end());
  if (ids != expected) {
    for (const auto& x : expected)
      if (!ids.count(x)) rep.failures.push_back("label " + x + " missing from catalog");
    for (const auto& x : ids)
      if (!expected.count(x)) rep.failures.push_back("label " + x + " is not a table label");
  }
  return rep;
}

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

}  // namespace stdquot
