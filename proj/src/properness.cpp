#include "stdquot/properness.hpp"

#include <algorithm>
#include <mutex>
#include <thread>

namespace stdquot {

namespace {

using Int = long long;

// primitive integer multiple of a rational vector
std::vector<Int> integral(const VecQ& v) {
  Integer l = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const Integer d = denominator_of(v(i));
    l = l / boost::multiprecision::gcd(l, d) * d;
  }
  std::vector<Int> out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const Rational x = v(i) * l;
    const Integer n = numerator_of(x);
    if (boost::multiprecision::abs(n) > Integer(1'000'000)) throw PropernessError("subspace entries too large");
    out.push_back(static_cast<Int>(n));
  }
  return out;
}

// rank of a small integer matrix by fraction-free elimination
int int_rank(std::vector<std::vector<__int128>> m) {
  const size_t rows = m.size();
  if (rows == 0) return 0;
  const size_t cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      const __int128 a = m[r][c], b = m[i][c];
      __int128 g = 0;
      for (size_t j = c; j < cols; ++j) {
        m[i][j] = m[i][j] * a - m[r][j] * b;
        const __int128 x = m[i][j] < 0 ? -m[i][j] : m[i][j];
        // keep entries small
        __int128 u = g, v = x;
        while (v != 0) {
          const __int128 t = u % v;
          u = v;
          v = t;
        }
        g = u;
      }
      if (g > 1)
        for (size_t j = c; j < cols; ++j) m[i][j] /= g;
    }
    ++r;
  }
  return static_cast<int>(r);
}

Family weyl_family(const std::string& tag, int& n) {
  const auto rs = RootSystem::parse(tag);
  n = rs.rank();
  switch (rs.family()) {
    case Family::B:
    case Family::C:
    case Family::BC:
    case Family::D: return rs.family();
    default: throw PropernessError("unsupported Weyl type '" + tag + "'");
  }
}

}  // namespace

SplitSubspace SplitSubspace::from_basis(int ambient_rank, std::vector<VecQ> basis) {
  SplitSubspace s{ambient_rank, std::move(basis)};
  for (const auto& v : s.basis)
    if (v.size() != ambient_rank) throw PropernessError("basis vector length differs from ambient rank");
  if (!s.basis.empty() && rank(s.matrix()) != s.dimension())
    throw PropernessError("split subspace basis is not linearly independent");
  return s;
}

MatQ SplitSubspace::matrix() const {
  MatQ m(ambient_rank, dimension());
  for (int i = 0; i < dimension(); ++i) m.col(i) = basis[static_cast<size_t>(i)];
  return m;
}

bool SplitSubspace::contains(const VecQ& v) const {
  if (basis.empty()) return is_zero_matrix<Rational>(v);
  MatQ m(ambient_rank, dimension() + 1);
  m.leftCols(dimension()) = matrix();
  m.col(dimension()) = v;
  return rank(m) == dimension();
}

PropernessCertificate merge(const PropernessCertificate& a, const PropernessCertificate& b) {
  PropernessCertificate c;
  c.group_order = std::max(a.group_order, b.group_order);
  c.checked_count = a.checked_count + b.checked_count;
  c.proper = a.proper && b.proper;
  if (a.witness && b.witness)
    c.witness = a.witness->weyl_index <= b.witness->weyl_index ? a.witness : b.witness;
  else
    c.witness = a.witness ? a.witness : b.witness;
  return c;
}

PropernessCertificate is_proper(const std::string& weyl_type, const SplitSubspace& aH,
                                const SplitSubspace& aL, const ScanOptions& opts) {
  int n = 0;
  const Family fam = weyl_family(weyl_type, n);
  if (aH.ambient_rank != n || aL.ambient_rank != n)
    throw PropernessError("subspace rank does not match Weyl type " + weyl_type);
  const ClassicalWeyl weyl(fam, n);

  PropernessCertificate total;
  total.group_order = weyl.size();
  const std::uint64_t begin = std::min(opts.begin, weyl.size());
  const std::uint64_t end = std::min(opts.end, weyl.size());
  if (aH.dimension() == 0 || aL.dimension() == 0) {
    total.proper = true;
    total.checked_count = end - begin;
    return total;
  }

  // a_H = ker(N); w.a_L meets a_H nontrivially iff N * (w.a_L) drops rank
  const MatQ annihilator = kernel<Rational>(aH.matrix().transpose()).transpose();
  std::vector<std::vector<Int>> nrows;
  for (Eigen::Index i = 0; i < annihilator.rows(); ++i) nrows.push_back(integral(annihilator.row(i).transpose()));
  std::vector<std::vector<Int>> lcols;
  for (const auto& v : aL.basis) lcols.push_back(integral(v));
  const int dl = aL.dimension();

  auto scan = [&](std::uint64_t lo, std::uint64_t hi) {
    PropernessCertificate cert;
    cert.group_order = weyl.size();
    cert.proper = true;
    std::vector<std::vector<__int128>> prod(nrows.size(), std::vector<__int128>(static_cast<size_t>(dl)));
    std::vector<Int> wv(static_cast<size_t>(n));
    weyl.for_each(lo, hi, [&](std::uint64_t idx, const ClassicalWeyl::Element& e) {
      ++cert.checked_count;
      for (int k = 0; k < dl; ++k) {
        const auto& v = lcols[static_cast<size_t>(k)];
        for (int i = 0; i < n; ++i)
          wv[static_cast<size_t>(e.perm[static_cast<size_t>(i)])] =
              ((e.signs >> i) & 1u) ? -v[static_cast<size_t>(i)] : v[static_cast<size_t>(i)];
        for (size_t r = 0; r < nrows.size(); ++r) {
          __int128 s = 0;
          for (int i = 0; i < n; ++i) s += static_cast<__int128>(nrows[r][static_cast<size_t>(i)]) * wv[static_cast<size_t>(i)];
          prod[r][static_cast<size_t>(k)] = s;
        }
      }
      if (int_rank(prod) < dl) {
        cert.proper = false;
        // witness: w.a_L vector in ker N, computed exactly
        MatQ wl(n, dl);
        for (int k = 0; k < dl; ++k) wl.col(k) = ClassicalWeyl::apply(e, aL.basis[static_cast<size_t>(k)]);
        const MatQ nk = annihilator.rows() ? MatQ(annihilator * wl) : MatQ::Zero(1, dl);
        const MatQ c = kernel<Rational>(nk);
        cert.witness = PropernessWitness{idx, VecQ(wl * c.col(0))};
        return false;
      }
      return true;
    });
    return cert;
  };

  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t span = end - begin;
  if (span < 100000) threads = 1;
  if (threads == 1) {
    PropernessCertificate c = scan(begin, end);
    c.proper = !c.witness;
    return c;
  }
  std::vector<PropernessCertificate> parts(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t lo = begin + span * t / threads;
    const std::uint64_t hi = begin + span * (t + 1) / threads;
    pool.emplace_back([&, t, lo, hi] { parts[t] = scan(lo, hi); });
  }
  for (auto& th : pool) th.join();
  PropernessCertificate acc = parts[0];
  for (unsigned t = 1; t < threads; ++t) acc = merge(acc, parts[t]);
  acc.group_order = weyl.size();
  return acc;
}

bool verify_witness(const std::string& weyl_type, const SplitSubspace& aH, const SplitSubspace& aL,
                    const PropernessWitness& w) {
  int n = 0;
  const Family fam = weyl_family(weyl_type, n);
  const ClassicalWeyl weyl(fam, n);
  if (is_zero_matrix<Rational>(w.vector)) return false;
  if (!aH.contains(w.vector)) return false;
  std::vector<VecQ> moved;
  for (const auto& v : aL.basis) moved.push_back(weyl.apply(w.weyl_index, v));
  return SplitSubspace{n, moved}.contains(w.vector);
}

bool is_cocompact(int dG, int dH, int dL, bool proper) {
  if (!proper) throw PropernessError("cocompactness criterion applies to proper actions only");
  return dG == dH + dL;
}

RowReport verify_table_row(const TripleCase& c, const ScanOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  RowReport r;
  r.label = c.label();
  const int rg = c.G.real_rank();
  const auto aH = SplitSubspace::from_basis(rg, c.aH_basis);
  const auto aL = SplitSubspace::from_basis(rg, c.aL_basis);
  r.certificate = is_proper(c.weyl_type, aH, aL, opts);
  r.proper = r.certificate.proper;
  r.dG = symmetric_space_dim(c.G);
  r.dH = symmetric_space_dim(c.H);
  r.dL = symmetric_space_dim(c.L);
  r.cocompact = r.proper && is_cocompact(r.dG, r.dH, r.dL, true);
  r.elapsed = std::chrono::steady_clock::now() - start;
  return r;
}

}  // namespace stdquot
