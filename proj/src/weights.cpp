#include "stdquot/weights.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace stdquot {

std::string family_name(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::E: return "E";
    case Family::F: return "F";
    case Family::G: return "G";
    case Family::BC: return "BC";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view s) {
  if (s == "A") return Family::A;
  if (s == "B") return Family::B;
  if (s == "C") return Family::C;
  if (s == "D") return Family::D;
  if (s == "E") return Family::E;
  if (s == "F") return Family::F;
  if (s == "G") return Family::G;
  if (s == "BC") return Family::BC;
  return std::nullopt;
}

bool Weight::dominant() const {
  return std::all_of(coords.begin(), coords.end(), [](long c) { return c >= 0; });
}

std::string Weight::str() const {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < coords.size(); ++i) os << (i ? "," : "") << coords[i];
  os << ']';
  return os.str();
}

long WeightMultiset::total() const {
  long t = 0;
  for (const auto& [w, m] : entries) t += m;
  return t;
}

void WeightMultiset::add(const Weight& w, long m) {
  if (m == 0) return;
  auto& slot = entries[w];
  slot += m;
  if (slot == 0) entries.erase(w);
}

namespace {

VecQ unit(int n, int i, int scale = 1) {
  VecQ v = VecQ::Zero(n);
  v(i) = scale;
  return v;
}

MatQ rows_to_matrix(const std::vector<VecQ>& rows) {
  MatQ m(static_cast<Eigen::Index>(rows.size()), rows.empty() ? 0 : rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  return m;
}

std::vector<VecQ> e8_simple_roots() {
  const Rational h(1, 2);
  std::vector<VecQ> r;
  VecQ a1 = VecQ::Constant(8, -h);
  a1(0) = h;
  a1(7) = h;
  r.push_back(a1);
  VecQ a2 = VecQ::Zero(8);
  a2(0) = 1;
  a2(1) = 1;
  r.push_back(a2);
  for (int i = 1; i <= 6; ++i) {
    VecQ a = VecQ::Zero(8);
    a(i) = 1;
    a(i - 1) = -1;
    r.push_back(a);
  }
  return r;
}

}  // namespace

RootSystem RootSystem::make(Family family, int rank) {
  RootSystem rs;
  rs.family_ = family;
  rs.rank_ = rank;
  std::vector<VecQ> s;
  auto chain = [&](int n, int count) {
    for (int i = 0; i < count; ++i) s.push_back(unit(n, i) - unit(n, i + 1));
  };
  switch (family) {
    case Family::A:
      if (rank < 1) throw RootSystemError("A_n requires n >= 1");
      chain(rank + 1, rank);
      break;
    case Family::B:
    case Family::BC:
      if (rank < 1) throw RootSystemError("B_n requires n >= 1");
      chain(rank, rank - 1);
      s.push_back(unit(rank, rank - 1));
      break;
    case Family::C:
      if (rank < 1) throw RootSystemError("C_n requires n >= 1");
      chain(rank, rank - 1);
      s.push_back(unit(rank, rank - 1, 2));
      break;
    case Family::D:
      if (rank < 2) throw RootSystemError("D_n requires n >= 2");
      chain(rank, rank - 1);
      s.push_back(unit(rank, rank - 2) + unit(rank, rank - 1));
      break;
    case Family::G: {
      if (rank != 2) throw RootSystemError("G has rank 2 only");
      VecQ a1(3), a2(3);
      a1 << 1, -1, 0;
      a2 << -2, 1, 1;
      s = {a1, a2};
      break;
    }
    case Family::F: {
      if (rank != 4) throw RootSystemError("F has rank 4 only");
      const Rational h(1, 2);
      VecQ a4(4);
      a4 << h, -h, -h, -h;
      s = {unit(4, 1) - unit(4, 2), unit(4, 2) - unit(4, 3), unit(4, 3), a4};
      break;
    }
    case Family::E: {
      if (rank < 6 || rank > 8) throw RootSystemError("E_n requires 6 <= n <= 8");
      auto all = e8_simple_roots();
      s.assign(all.begin(), all.begin() + rank);
      break;
    }
  }
  rs.simple_ = rows_to_matrix(s);
  rs.finish();
  return rs;
}

RootSystem RootSystem::parse(std::string_view tag) {
  size_t i = 0;
  while (i < tag.size() && std::isalpha(static_cast<unsigned char>(tag[i]))) ++i;
  const auto fam = parse_family(tag.substr(0, i));
  if (!fam || i == tag.size()) throw RootSystemError("bad root system tag '" + std::string(tag) + "'");
  int rank = 0;
  try {
    rank = std::stoi(std::string(tag.substr(i)));
  } catch (const std::exception&) {
    throw RootSystemError("bad root system tag '" + std::string(tag) + "'");
  }
  return make(*fam, rank);
}

std::string RootSystem::tag() const { return family_name(family_) + std::to_string(rank_); }

std::size_t RootSystem::classical_positive_root_count() const {
  const auto n = static_cast<std::size_t>(rank_);
  switch (family_) {
    case Family::A: return n * (n + 1) / 2;
    case Family::B:
    case Family::C: return n * n;
    case Family::BC: return n * n + n;
    case Family::D: return n * (n - 1);
    case Family::G: return 6;
    case Family::F: return 24;
    case Family::E: return n == 6 ? 36 : (n == 7 ? 63 : 120);
  }
  return 0;
}

void RootSystem::finish() {
  const int n = rank_;
  MatQ gram = simple_ * simple_.transpose();
  cartan_.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Rational a = 2 * gram(i, j) / gram(j, j);
      if (denominator_of(a) != 1) throw RootSystemError("non-integral Cartan entry");
      cartan_(i, j) = static_cast<int>(numerator_of(a));
    }

  // positive roots by height, via alpha-strings
  std::set<std::vector<int>> known;
  std::vector<Eigen::VectorXi> level;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXi e = Eigen::VectorXi::Zero(n);
    e(i) = 1;
    level.push_back(e);
    known.insert(std::vector<int>(e.data(), e.data() + n));
  }
  auto key = [n](const Eigen::VectorXi& v) { return std::vector<int>(v.data(), v.data() + n); };
  while (!level.empty()) {
    std::vector<Eigen::VectorXi> next;
    for (const auto& beta : level) {
      positive_.push_back(beta);
      for (int i = 0; i < n; ++i) {
        int p = 0;
        Eigen::VectorXi down = beta;
        while (true) {
          down(i) -= 1;
          if (!known.count(key(down))) break;
          ++p;
        }
        int pairing = 0;
        for (int j = 0; j < n; ++j) pairing += beta(j) * cartan_(j, i);
        const int q = p - pairing;
        if (q > 0) {
          Eigen::VectorXi up = beta;
          up(i) += 1;
          if (known.insert(key(up)).second) next.push_back(up);
        }
      }
    }
    level = std::move(next);
  }
  const std::size_t reduced = positive_.size();
  if (family_ == Family::BC) {
    // 2e_i = 2 * (short root e_i); the short roots of B_n are the roots ending in the last simple root
    std::vector<Eigen::VectorXi> extra;
    for (const auto& beta : positive_) {
      VecQ v = root_vector(beta);
      if (v.squaredNorm() == 1) extra.push_back(2 * beta);
    }
    positive_.insert(positive_.end(), extra.begin(), extra.end());
  }
  for (std::size_t r = 0; r < reduced; ++r) {
    const auto& beta = positive_[r];
    const VecQ v = root_vector(beta);
    const Rational len = v.squaredNorm();
    Eigen::VectorXi c(n);
    for (int i = 0; i < n; ++i) {
      const Rational ci = beta(i) * gram(i, i) / len;
      if (denominator_of(ci) != 1) throw RootSystemError("non-integral coroot");
      c(i) = static_cast<int>(numerator_of(ci));
    }
    coroots_.push_back(c);
  }
  if (positive_.size() != classical_positive_root_count())
    throw RootSystemError("positive root count mismatch for " + tag());

  MatQ a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cartan_(i, j);
  const MatQ ainv = inverse(a);
  fundamental_ = ainv * simple_;
  weight_form_ = ainv * gram * ainv.transpose();
}

VecQ RootSystem::root_vector(const Eigen::VectorXi& c) const {
  VecQ v = VecQ::Zero(simple_.cols());
  for (int i = 0; i < rank_; ++i)
    if (c(i) != 0) v += Rational(c(i)) * simple_.row(i).transpose();
  return v;
}

Rational RootSystem::inner(const Weight& a, const Weight& b) const {
  Rational s = 0;
  for (int i = 0; i < rank_; ++i) {
    if (a.coords[static_cast<size_t>(i)] == 0) continue;
    for (int j = 0; j < rank_; ++j)
      if (b.coords[static_cast<size_t>(j)] != 0)
        s += weight_form_(i, j) * a.coords[static_cast<size_t>(i)] * b.coords[static_cast<size_t>(j)];
  }
  return s;
}

Weight RootSystem::rho() const { return Weight(std::vector<long>(static_cast<size_t>(rank_), 1)); }

Weight RootSystem::simple_root_weight(int i) const {
  Weight w = Weight::zero(rank_);
  for (int j = 0; j < rank_; ++j) w.coords[static_cast<size_t>(j)] = cartan_(i, j);
  return w;
}

Weight RootSystem::root_weight(const Eigen::VectorXi& c) const {
  Weight w = Weight::zero(rank_);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) w.coords[static_cast<size_t>(j)] += c(i) * cartan_(i, j);
  return w;
}

Weight RootSystem::from_coordinates(const VecQ& v) const {
  Weight w = Weight::zero(rank_);
  for (int i = 0; i < rank_; ++i) {
    const VecQ a = simple_.row(i).transpose();
    const Rational x = 2 * v.dot(a) / a.squaredNorm();
    if (denominator_of(x) != 1) throw RootSystemError("vector is not an integral weight");
    w.coords[static_cast<size_t>(i)] = static_cast<long>(numerator_of(x));
  }
  return w;
}

VecQ RootSystem::to_coordinates(const Weight& w) const {
  VecQ v = VecQ::Zero(simple_.cols());
  for (int i = 0; i < rank_; ++i)
    if (w.coords[static_cast<size_t>(i)] != 0)
      v += Rational(w.coords[static_cast<size_t>(i)]) * fundamental_.row(i).transpose();
  return v;
}

Weight RootSystem::reflect(const Weight& w, int i) const {
  Weight r = w;
  const long c = w.coords[static_cast<size_t>(i)];
  for (int j = 0; j < rank_; ++j) r.coords[static_cast<size_t>(j)] -= c * cartan_(i, j);
  return r;
}

Weight RootSystem::dominant_representative(const Weight& w) const {
  Weight r = w;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < rank_; ++i)
      if (r.coords[static_cast<size_t>(i)] < 0) {
        r = reflect(r, i);
        changed = true;
      }
  }
  return r;
}

std::vector<Weight> RootSystem::orbit(const Weight& w) const {
  std::set<Weight> seen{w};
  std::vector<Weight> out{w};
  for (size_t k = 0; k < out.size(); ++k)
    for (int i = 0; i < rank_; ++i) {
      if (out[k].coords[static_cast<size_t>(i)] == 0) continue;
      Weight r = reflect(out[k], i);
      if (seen.insert(r).second) out.push_back(r);
    }
  return out;
}

Integer weyl_group_order(const RootSystem& rs) {
  const int n = rs.rank();
  Integer fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  switch (rs.family()) {
    case Family::A: return fact * (n + 1);
    case Family::B:
    case Family::C:
    case Family::BC: return fact * (Integer(1) << n);
    case Family::D: return fact * (Integer(1) << (n - 1));
    case Family::G: return 12;
    case Family::F: return 1152;
    case Family::E: return n == 6 ? Integer(51840) : (n == 7 ? Integer(2903040) : Integer(696729600));
  }
  throw RootSystemError("unsupported family");
}

// ---------------------------------------------------------------------------

ClassicalWeyl::ClassicalWeyl(const RootSystem& rs)
    : ClassicalWeyl(rs.family(), rs.family() == Family::A ? rs.rank() + 1 : rs.rank()) {}

ClassicalWeyl::ClassicalWeyl(Family family, int n) : family_(family), n_(n) {
  if (family == Family::E || family == Family::F || family == Family::G)
    throw RootSystemError("Weyl enumeration is only available for classical families");
  if (n < 1 || n > 20) throw RootSystemError("unsupported Weyl group rank");
  perm_count_ = 1;
  for (int i = 2; i <= n; ++i) perm_count_ *= static_cast<std::uint64_t>(i);
  switch (family) {
    case Family::A: sign_count_ = 1; break;
    case Family::D: sign_count_ = std::uint64_t{1} << (n - 1); break;
    default: sign_count_ = std::uint64_t{1} << n; break;
  }
}

std::uint32_t ClassicalWeyl::sign_mask(std::uint64_t sign_rank) const {
  if (family_ == Family::A) return 0;
  auto mask = static_cast<std::uint32_t>(sign_rank);
  if (family_ == Family::D && (__builtin_popcount(mask) & 1)) mask |= std::uint32_t{1} << (n_ - 1);
  return mask;
}

ClassicalWeyl::Element ClassicalWeyl::element(std::uint64_t index) const {
  if (index >= size()) throw RootSystemError("Weyl element index out of range");
  std::uint64_t prank = index / sign_count_;
  Element e;
  e.signs = sign_mask(index % sign_count_);
  std::vector<int> pool(static_cast<size_t>(n_));
  std::iota(pool.begin(), pool.end(), 0);
  std::uint64_t f = perm_count_;
  for (int i = n_; i >= 1; --i) {
    f /= static_cast<std::uint64_t>(i);
    const auto k = static_cast<size_t>(prank / f);
    prank %= f;
    e.perm.push_back(pool[k]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return e;
}

std::uint64_t ClassicalWeyl::index_of(const Element& e) const {
  std::vector<int> pool(static_cast<size_t>(n_));
  std::iota(pool.begin(), pool.end(), 0);
  std::uint64_t prank = 0;
  std::uint64_t f = perm_count_;
  for (int i = 0; i < n_; ++i) {
    f /= static_cast<std::uint64_t>(n_ - i);
    const auto it = std::find(pool.begin(), pool.end(), e.perm[static_cast<size_t>(i)]);
    prank += static_cast<std::uint64_t>(it - pool.begin()) * f;
    pool.erase(it);
  }
  std::uint64_t srank = e.signs;
  if (family_ == Family::D) srank &= (std::uint64_t{1} << (n_ - 1)) - 1;
  if (sign_mask(srank) != e.signs) throw RootSystemError("sign pattern not in this Weyl group");
  return prank * sign_count_ + srank;
}

VecQ ClassicalWeyl::apply(const Element& e, const VecQ& v) {
  VecQ out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const bool neg = (e.signs >> i) & 1u;
    out(e.perm[static_cast<size_t>(i)]) = neg ? Rational(-v(i)) : v(i);
  }
  return out;
}

VecQ ClassicalWeyl::apply(std::uint64_t index, const VecQ& v) const {
  if (v.size() != n_) throw RootSystemError("vector length does not match Weyl group");
  return apply(element(index), v);
}

void ClassicalWeyl::for_each(std::uint64_t begin, std::uint64_t end,
                             const std::function<bool(std::uint64_t, const Element&)>& f) const {
  end = std::min(end, size());
  if (begin >= end) return;
  Element e = element(begin);
  std::uint64_t srank = begin % sign_count_;
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    if (!f(idx, e)) return;
    ++srank;
    if (srank == sign_count_) {
      srank = 0;
      std::next_permutation(e.perm.begin(), e.perm.end());
    }
    e.signs = sign_mask(srank);
  }
}

// ---------------------------------------------------------------------------

Integer weyl_dim(const RootSystem& rs, const Weight& hw) {
  if (!rs.reduced()) throw RootSystemError("dimension formula requires a reduced root system");
  if (hw.rank() != rs.rank()) throw RootSystemError("weight rank mismatch");
  if (!hw.dominant()) throw RootSystemError("weight " + hw.str() + " is not dominant");
  Integer num = 1, den = 1;
  for (const auto& c : rs.positive_coroots()) {
    long a = 0, b = 0;
    for (int i = 0; i < rs.rank(); ++i) {
      a += c(i) * (hw.coords[static_cast<size_t>(i)] + 1);
      b += c(i);
    }
    num *= a;
    den *= b;
  }
  if (num % den != 0) throw RootSystemError("Weyl dimension is not integral");
  return num / den;
}

WeightMultiset freudenthal_multiplicities(const RootSystem& rs, const Weight& hw, long budget) {
  const Integer dim = weyl_dim(rs, hw);
  if (dim > budget) throw RootSystemError("representation dimension exceeds budget");
  const int n = rs.rank();
  std::vector<Weight> proots;
  for (const auto& r : rs.positive_roots()) proots.push_back(rs.root_weight(r));

  // dominant weights below hw, ordered by depth
  std::map<Weight, long> depth;
  std::vector<Weight> order{hw};
  depth[hw] = 0;
  for (size_t k = 0; k < order.size(); ++k) {
    for (size_t r = 0; r < proots.size(); ++r) {
      Weight mu = order[k];
      for (int i = 0; i < n; ++i) mu.coords[static_cast<size_t>(i)] -= proots[r].coords[static_cast<size_t>(i)];
      if (!mu.dominant() || depth.count(mu)) continue;
      // depth = height of hw - mu
      long h = 0;
      for (int i = 0; i < n; ++i) h += rs.positive_roots()[r](i);
      depth[mu] = depth[order[k]] + h;
      order.push_back(mu);
    }
  }
  // recompute depth as the exact height of hw - mu (BFS may find a shorter path first)
  std::sort(order.begin(), order.end(), [&](const Weight& a, const Weight& b) {
    const Rational da = rs.inner(rs.rho(), hw) - rs.inner(rs.rho(), a);
    const Rational db = rs.inner(rs.rho(), hw) - rs.inner(rs.rho(), b);
    return da < db;
  });

  std::map<Weight, long> mult;
  const Weight rho = rs.rho();
  auto plus = [n](const Weight& a, const Weight& b, long k = 1) {
    Weight c = a;
    for (int i = 0; i < n; ++i) c.coords[static_cast<size_t>(i)] += k * b.coords[static_cast<size_t>(i)];
    return c;
  };
  const Weight hr = plus(hw, rho);
  const Rational top = rs.inner(hr, hr);
  for (const auto& mu : order) {
    if (mu == hw) {
      mult[mu] = 1;
      continue;
    }
    Rational sum = 0;
    for (const auto& alpha : proots) {
      for (long k = 1;; ++k) {
        const Weight nu = plus(mu, alpha, k);
        const Weight dom = rs.dominant_representative(nu);
        const auto it = mult.find(dom);
        if (it == mult.end()) break;
        sum += Rational(it->second) * rs.inner(nu, alpha);
      }
    }
    const Weight mr = plus(mu, rho);
    const Rational m = 2 * sum / (top - rs.inner(mr, mr));
    if (denominator_of(m) != 1) throw RootSystemError("non-integral Freudenthal multiplicity");
    const long mi = static_cast<long>(numerator_of(m));
    if (mi > 0) mult[mu] = mi;
  }
  WeightMultiset out;
  for (const auto& [w, m] : mult) out.add(w, m);
  return out;
}

WeightMultiset full_weight_multiset(const RootSystem& rs, const Weight& hw, long budget) {
  const auto dom = freudenthal_multiplicities(rs, hw, budget);
  WeightMultiset out;
  for (const auto& [w, m] : dom.entries)
    for (const auto& x : rs.orbit(w)) out.add(x, m);
  return out;
}

std::vector<std::pair<Weight, long>> peel_highest_weights(const RootSystem& rs, WeightMultiset weights) {
  std::vector<std::pair<Weight, long>> out;
  const Weight rho = rs.rho();
  while (!weights.entries.empty()) {
    // a dominant weight maximizing <w, rho> is maximal in the dominance order
    const Weight* best = nullptr;
    Rational best_height;
    for (const auto& [w, m] : weights.entries) {
      if (m < 0) throw RootSystemError("weight multiset is not a character (negative multiplicity)");
      if (!w.dominant()) continue;
      const Rational h = rs.inner(w, rho);
      if (!best || h > best_height || (h == best_height && w > *best)) {
        best = &w;
        best_height = h;
      }
    }
    if (!best) throw RootSystemError("weight multiset has no dominant weight");
    const Weight hw = *best;
    const long m = weights.entries.at(hw);
    const auto sub = full_weight_multiset(rs, hw);
    for (const auto& [w, k] : sub.entries) {
      weights.add(w, -k * m);
      if (weights.entries.count(w) && weights.entries.at(w) < 0)
        throw RootSystemError("weight multiset is not a character");
    }
    out.emplace_back(hw, m);
  }
  return out;
}

}  // namespace stdquot
