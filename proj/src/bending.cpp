#include "stdquot/bending.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace stdquot {

ConfigError::ConfigError(int line_no, std::string field_name, const std::string& message)
    : BendingError((line_no > 0 ? "line " + std::to_string(line_no) + ": " : std::string()) + field_name + ": " +
                   message),
      line(line_no),
      field(std::move(field_name)) {}

namespace {

std::vector<std::string> tokens(std::string_view text, char sep = ' ') {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(cur);
    cur.clear();
  };
  for (char c : text) {
    if (c == sep || (sep == ' ' && std::isspace(static_cast<unsigned char>(c))))
      flush();
    else
      cur.push_back(c);
  }
  flush();
  return out;
}

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

MatQ parse_matrix(const std::string& text, int line, const std::string& field) {
  std::string body = trim(text);
  if (body.size() < 2 || body.front() != '[' || body.back() != ']')
    throw ConfigError(line, field, "matrix must be written as [a b; c d]");
  const auto rows = tokens(body.substr(1, body.size() - 2), ';');
  std::vector<std::vector<Rational>> entries;
  for (const auto& r : rows) {
    std::vector<Rational> row;
    for (const auto& tok : tokens(r)) {
      try {
        row.push_back(parse_rational(tok));
      } catch (const std::exception&) {
        throw ConfigError(line, field, "bad matrix entry '" + tok + "'");
      }
    }
    entries.push_back(std::move(row));
  }
  const auto n = static_cast<Eigen::Index>(entries.size());
  MatQ m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(entries[static_cast<size_t>(i)].size()) != n)
      throw ConfigError(line, field, "matrix is not square");
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = entries[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }
  return m;
}

bool is_product_of(const Word& w, size_t begin, size_t end, const std::vector<Word>& pieces) {
  std::vector<char> reach(end - begin + 1, 0);
  reach[0] = 1;
  for (size_t i = 0; i < reach.size(); ++i) {
    if (!reach[i]) continue;
    for (const auto& p : pieces)
      for (const Word& q : {p, inverse_word(p)}) {
        if (q.empty() || i + q.size() > end - begin) continue;
        if (std::equal(q.begin(), q.end(), w.begin() + static_cast<std::ptrdiff_t>(begin + i))) reach[i + q.size()] = 1;
      }
  }
  return reach.back();
}

MatR real_inverse(const MatR& m) { return m.fullPivLu().inverse(); }

}  // namespace

Word parse_word(std::string_view text) {
  Word w;
  for (auto tok : tokens(text)) {
    Letter l;
    if (const auto caret = tok.find('^'); caret != std::string::npos) {
      const std::string pw = tok.substr(caret + 1);
      if (pw == "-1")
        l.power = -1;
      else if (pw != "1")
        throw BendingError("bad exponent in '" + tok + "'");
      tok = tok.substr(0, caret);
    }
    if (tok.empty() || !std::isalpha(static_cast<unsigned char>(tok[0]))) throw BendingError("bad letter '" + tok + "'");
    if (std::isupper(static_cast<unsigned char>(tok[0]))) {
      tok[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(tok[0])));
      l.power = -l.power;
    }
    l.symbol = tok;
    w.push_back(l);
  }
  return w;
}

std::string format_word(const Word& w) {
  std::string s;
  for (const auto& l : w) {
    if (!s.empty()) s += ' ';
    std::string sym = l.symbol;
    if (l.power < 0) sym[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(sym[0])));
    s += sym;
  }
  return s;
}

Word inverse_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& l : out) l.power = -l.power;
  return out;
}

int BendingDatum::matrix_size() const {
  if (images.empty()) return 0;
  return static_cast<int>(images.begin()->second.rows());
}

MatQ evaluate_exact(const std::map<std::string, MatQ>& images, const Word& w) {
  if (images.empty()) throw BendingError("no images");
  const auto n = images.begin()->second.rows();
  MatQ acc = MatQ::Identity(n, n);
  std::map<std::string, MatQ> inverses;
  for (const auto& l : w) {
    const auto it = images.find(l.symbol);
    if (it == images.end()) throw BendingError("no image for '" + l.symbol + "'");
    if (l.power > 0) {
      acc = acc * it->second;
    } else {
      auto inv = inverses.find(l.symbol);
      if (inv == inverses.end()) inv = inverses.emplace(l.symbol, inverse(it->second)).first;
      acc = acc * inv->second;
    }
  }
  return acc;
}

MatR evaluate(const std::map<std::string, MatR>& images, const Word& w) {
  if (images.empty()) throw BendingError("no images");
  const auto n = images.begin()->second.rows();
  MatR acc = MatR::Identity(n, n);
  for (const auto& l : w) {
    const auto it = images.find(l.symbol);
    if (it == images.end()) throw BendingError("no image for '" + l.symbol + "'");
    acc = l.power > 0 ? MatR(acc * it->second) : MatR(acc * real_inverse(it->second));
  }
  return acc;
}

void BendingDatum::validate() const {
  const int n = matrix_size();
  std::vector<std::string> symbols = generators;
  symbols.insert(symbols.end(), stable_letters.begin(), stable_letters.end());
  for (const auto& s : symbols) {
    const auto it = images.find(s);
    if (it == images.end()) throw BendingError("no matrix for '" + s + "'");
    if (it->second.rows() != n) throw BendingError("matrix for '" + s + "' has the wrong size");
    if (rank<Rational>(it->second) != n) throw BendingError("matrix for '" + s + "' is not invertible");
  }
  if (edge_words.size() != stable_letters.size()) throw BendingError("one edge-word list per stable letter is required");
  const std::set<std::string> known(symbols.begin(), symbols.end());
  const std::set<std::string> stable(stable_letters.begin(), stable_letters.end());
  for (const auto& r : relators) {
    for (const auto& l : r)
      if (!known.count(l.symbol)) throw BendingError("unknown letter '" + l.symbol + "' in relator");
    const MatQ value = evaluate_exact(images, r);
    if (value != MatQ::Identity(n, n)) {
      PrecisionScope scope(precision);
      const Real res = max_abs(MatR(to_real(value) - MatR::Identity(n, n)));
      if (res > Real(tolerance))
        throw BendingError("relator '" + format_word(r) + "' is not the identity (residual " +
                           res.str(3, std::ios_base::scientific) + ")");
    }
  }
  for (size_t i = 0; i < stable_letters.size(); ++i) {
    for (const auto& w : edge_words[i])
      for (const auto& l : w)
        if (stable.count(l.symbol) || !known.count(l.symbol))
          throw BendingError("edge word '" + format_word(w) + "' must use surface generators only");
    const std::string& tau = stable_letters[i];
    for (const auto& r : relators) {
      std::vector<size_t> pos;
      for (size_t k = 0; k < r.size(); ++k)
        if (r[k].symbol == tau) pos.push_back(k);
      if (pos.empty()) continue;
      if (pos.size() % 2) throw BendingError("stable letter '" + tau + "' occurs an odd number of times in a relator");
      // cyclic pairing tau w tau^-1 with w a product of edge words
      bool ok_any = false;
      for (size_t offset : {size_t{0}, size_t{1}}) {
        bool ok = true;
        const Word doubled = [&] {
          Word d = r;
          d.insert(d.end(), r.begin(), r.end());
          return d;
        }();
        for (size_t k = 0; ok && k < pos.size(); k += 2) {
          const size_t a = pos[(k + offset) % pos.size()];
          size_t b = pos[(k + offset + 1) % pos.size()];
          if (b < a) b += r.size();
          if (doubled[a].power != 1 || doubled[b].power != -1) {
            ok = false;
            break;
          }
          for (size_t m = a + 1; m < b; ++m)
            if (stable.count(doubled[m].symbol)) ok = false;
          ok = ok && is_product_of(doubled, a + 1, b, edge_words[i]);
        }
        ok_any = ok_any || ok;
      }
      if (!ok_any)
        throw BendingError("stable letter '" + tau + "' does not conjugate edge words in relator '" + format_word(r) + "'");
    }
  }
}

BendingDatum parse_bending_config(std::string_view text) {
  BendingDatum d;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  std::map<std::string, MatQ> bends;
  std::map<std::string, std::vector<Word>> edges;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string content = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (content.empty()) continue;
    const auto sp = content.find_first_of(" \t");
    const std::string key = content.substr(0, sp);
    const std::string rest = sp == std::string::npos ? "" : trim(content.substr(sp));
    try {
      if (key == "precision") {
        const long p = std::stol(rest);
        if (p < 16 || p > 2000) throw ConfigError(line, key, "must lie in 16..2000");
        d.precision = static_cast<unsigned>(p);
      } else if (key == "tolerance") {
        d.tolerance = std::stod(rest);
        if (!(d.tolerance > 0)) throw ConfigError(line, key, "must be positive");
      } else if (key == "generators") {
        d.generators = tokens(rest);
      } else if (key == "stable") {
        d.stable_letters = tokens(rest);
      } else if (key == "relator") {
        d.relators.push_back(parse_word(rest));
      } else if (key == "edge") {
        const auto toks = tokens(rest);
        if (toks.size() < 2) throw ConfigError(line, key, "expected 'edge <stable letter> <word>'");
        edges[toks[0]].push_back(parse_word(rest.substr(rest.find(toks[0]) + toks[0].size())));
      } else if (key == "matrix" || key == "bend") {
        const auto eq = rest.find('=');
        if (eq == std::string::npos) throw ConfigError(line, key, "expected '<symbol> = [..]'");
        const std::string sym = trim(rest.substr(0, eq));
        MatQ m = parse_matrix(rest.substr(eq + 1), line, key + " " + sym);
        (key == "matrix" ? d.images : bends)[sym] = std::move(m);
      } else if (key == "t") {
        for (const auto& tok : tokens(rest, ',')) {
          try {
            d.t_grid.push_back(parse_rational(tok));
          } catch (const std::exception&) {
            throw ConfigError(line, key, "bad value '" + trim(tok) + "'");
          }
        }
      } else {
        throw ConfigError(line, key, "unknown field");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(line, key, e.what());
    }
  }
  if (d.generators.empty()) throw ConfigError(0, "generators", "missing");
  for (const auto& tau : d.stable_letters) {
    d.edge_words.push_back(edges[tau]);
    if (edges[tau].empty()) throw ConfigError(0, "edge", "no edge words for stable letter '" + tau + "'");
    if (bends.count(tau)) d.bend_vectors.push_back(bends[tau]);
  }
  for (const auto& [sym, m] : bends)
    if (std::find(d.stable_letters.begin(), d.stable_letters.end(), sym) == d.stable_letters.end())
      throw ConfigError(0, "bend", "'" + sym + "' is not a stable letter");
  if (!d.bend_vectors.empty() && d.bend_vectors.size() != d.stable_letters.size())
    throw ConfigError(0, "bend", "one bend vector per stable letter is required");
  try {
    d.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const BendingError& e) {
    throw ConfigError(0, "relator", e.what());
  }
  return d;
}

BendingDatum load_bending_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "file", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_bending_config(ss.str());
}

DeformedRepresentation bend(const BendingDatum& d, const std::vector<MatQ>& v, const Rational& t) {
  if (v.size() != d.stable_letters.size()) throw BendingError("one bend vector per stable letter is required");
  const int n = d.matrix_size();
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i].rows() != n || v[i].cols() != n) throw BendingError("bend vector " + std::to_string(i + 1) + " has the wrong size");
    for (const auto& w : d.edge_words[i]) {
      const MatQ g = evaluate_exact(d.images, w);
      if (MatQ(g * v[i]) != MatQ(v[i] * g))
        throw BendingError("fixed-vector precondition fails for stable letter '" + d.stable_letters[i] +
                           "' at edge word '" + format_word(w) + "'");
    }
  }
  PrecisionScope scope(d.precision);
  DeformedRepresentation rep;
  rep.t = t;
  rep.precision = d.precision;
  rep.tolerance = d.tolerance;
  rep.exact = t == 0;
  for (const auto& [sym, m] : d.images) rep.images[sym] = to_real(m);
  if (!rep.exact) {
    const Real tr = to_real(t);
    for (size_t i = 0; i < v.size(); ++i) {
      MatR& img = rep.images[d.stable_letters[i]];
      img = img * expm(MatR(to_real(v[i]) * tr));
    }
  }
  for (const auto& r : d.relators) {
    double res = 0;
    if (rep.exact) {
      res = evaluate_exact(d.images, r) == MatQ::Identity(n, n) ? 0.0
                                                                 : max_abs(MatR(to_real(evaluate_exact(d.images, r)) -
                                                                                MatR::Identity(n, n)))
                                                                       .convert_to<double>();
    } else {
      res = max_abs(MatR(evaluate(rep.images, r) - MatR::Identity(n, n))).convert_to<double>();
    }
    rep.relator_residuals.push_back(res);
    rep.max_residual = std::max(rep.max_residual, res);
  }
  if (rep.max_residual > d.tolerance)
    throw BendingError("relator residual " + std::to_string(rep.max_residual) + " exceeds tolerance");
  return rep;
}

}  // namespace stdquot
