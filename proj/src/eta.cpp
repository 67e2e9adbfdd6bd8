#include "stdquot/bending.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace stdquot {

namespace {

constexpr std::uint64_t kTrialLimit = 1000000;

// prime -> exponent, for a positive integer
std::map<std::uint64_t, long> factor(Integer x) {
  std::map<std::uint64_t, long> out;
  for (std::uint64_t p = 2; p <= kTrialLimit && x > 1; p += (p == 2 ? 1 : 2)) {
    if (Integer(p) * p > x) break;
    while (x % p == 0) {
      x /= p;
      ++out[p];
    }
  }
  if (x > 1) {
    if (x > Integer(kTrialLimit) * kTrialLimit) throw BendingError("torus entry has a large unfactored part");
    ++out[static_cast<std::uint64_t>(x)];
  }
  return out;
}

// e in lowest terms with e in [0, 1): order of rotation by 2 pi e
long rotation_order(const Rational& turns) {
  Rational e = turns - Rational(numerator_of(turns) / denominator_of(turns));
  if (e < 0) e += 1;
  return static_cast<long>(denominator_of(e));
}

std::string q(const Rational& x) { return format_rational(x); }

MatR skew(const VecQ& axis) {
  VecR a(3);
  for (int i = 0; i < 3; ++i) a(i) = to_real(axis(i));
  a /= sqrt(a.dot(a));
  MatR k(3, 3);
  k << Real(0), -a(2), a(1), a(2), Real(0), -a(0), -a(1), a(0), Real(0);
  return k;
}

bool parallel(const VecQ& a, const VecQ& b) {
  return a(1) * b(2) - a(2) * b(1) == 0 && a(2) * b(0) - a(0) * b(2) == 0 && a(0) * b(1) - a(1) * b(0) == 0;
}

}  // namespace

TorusClosure eta_split_torus(const std::vector<std::vector<Rational>>& generators, int dim) {
  if (dim < 1) throw BendingError("torus dimension must be positive");
  TorusClosure out;
  out.ambient = dim;
  std::vector<std::vector<std::map<std::uint64_t, long>>> exps;
  std::set<std::uint64_t> primes;
  for (const auto& g : generators) {
    if (static_cast<int>(g.size()) != dim) throw BendingError("torus generator has the wrong number of entries");
    std::vector<std::map<std::uint64_t, long>> row;
    for (const auto& x : g) {
      if (x <= 0) throw BendingError("torus entries must be positive rationals");
      auto num = factor(numerator_of(x));
      for (const auto& [p, e] : factor(denominator_of(x))) num[p] -= e;
      for (const auto& [p, e] : num) primes.insert(p);
      row.push_back(std::move(num));
    }
    exps.push_back(std::move(row));
  }
  out.primes.assign(primes.begin(), primes.end());
  MatQ a = MatQ::Zero(static_cast<Eigen::Index>(generators.size() * primes.size()), dim);
  Eigen::Index r = 0;
  for (const auto& row : exps)
    for (auto p : out.primes) {
      for (int i = 0; i < dim; ++i) {
        const auto& m = row[static_cast<size_t>(i)];
        if (const auto it = m.find(p); it != m.end()) a(r, i) = it->second;
      }
      ++r;
    }
  out.dimension = a.rows() == 0 ? 0 : static_cast<int>(rank<Rational>(a));
  out.annihilator_rank = dim - out.dimension;
  return out;
}

Rotation Rotation::from_angle(const Rational& multiple_of_pi) {
  Rotation r;
  r.form = Form::Angle;
  r.angle = multiple_of_pi;
  return r;
}

Rotation Rotation::from_cosine(const Rational& c, const Rational& s) {
  if (c * c + s * s != 1) throw BendingError("(cos, sin) = (" + q(c) + ", " + q(s) + ") is not on the unit circle");
  Rotation r;
  r.form = Form::Cosine;
  r.cos = c;
  r.sin = s;
  return r;
}

std::string So2Closure::str() const { return full ? "full SO(2)" : "finite of order " + std::to_string(order); }

So2Closure eta_so2(const std::vector<Rotation>& rotations, const Rational& t) {
  So2Closure out;
  for (const auto& rot : rotations) {
    std::optional<Rational> angle;  // multiple of pi
    if (rot.form == Rotation::Form::Angle) {
      angle = rot.angle;
    } else if (rot.cos == 1 || rot.cos == -1 || rot.cos == 0) {
      angle = rot.cos == 1 ? Rational(0) : rot.cos == -1 ? Rational(1) : Rational(rot.sin > 0 ? 1 : -1, 2);
    } else if (rot.cos == Rational(1, 2) || rot.cos == Rational(-1, 2)) {
      throw BendingError("cos = +-1/2 has no rational sine");
    }
    if (angle) {
      const long ord = rotation_order(t * *angle / 2);
      out.order = std::lcm(out.order, ord);
      out.reasons.push_back("angle " + q(t * *angle) + " pi: order " + std::to_string(ord));
    } else if (t == 0) {
      out.reasons.push_back("t = 0: identity");
    } else {
      out.full = true;
      out.reasons.push_back("cos " + q(rot.cos) + " outside {0, +-1/2, +-1}: angle is an irrational multiple of pi");
    }
  }
  if (out.full) out.order = 0;
  return out;
}

Su2Kill eta_su2_kill(const std::vector<Su2Generator>& xs) {
  const auto first =
      std::find_if(xs.begin(), xs.end(), [](const Su2Generator& g) { return g.rate != 0; });
  if (first == xs.end()) throw BendingError("eta_su2_kill: all rates are zero");
  for (const auto& g : xs)
    if (g.axis.size() != 3 || is_zero_matrix<Rational>(g.axis)) throw BendingError("eta_su2_kill: bad axis");
  Su2Kill out;
  out.t = 1 / first->rate;
  for (size_t i = 0; i < xs.size(); ++i)
    if (denominator_of(out.t * xs[i].rate) != 1) out.survivors.push_back(i);
  if (out.survivors.empty()) {
    out.closure = "trivial";
    out.proper_subgroup = true;
    return out;
  }
  const VecQ& axis = xs[out.survivors.front()].axis;
  bool same_axis = true;
  long order = 1;
  for (auto i : out.survivors) {
    same_axis = same_axis && parallel(axis, xs[i].axis);
    order = std::lcm(order, rotation_order(out.t * xs[i].rate));
  }
  if (same_axis) {
    out.closure = "finite cyclic of order " + std::to_string(order) + " inside a 1-dim torus";
    out.proper_subgroup = true;
  } else {
    out.closure = "not determined (finite-order rotations about distinct axes)";
  }
  return out;
}

std::vector<Su2SpanSample> eta_su2_span(const std::vector<VecQ>& axes, const std::vector<Real>& rates,
                                        const std::vector<Real>& t_grid) {
  if (axes.size() != rates.size()) throw BendingError("eta_su2_span: one rate per axis");
  const Real two_pi = 2 * Real(acos(Real(-1)));
  std::vector<Su2SpanSample> out;
  for (const auto& t : t_grid) {
    Su2SpanSample s;
    s.t = t;
    std::vector<MatR> rots;
    for (size_t i = 0; i < axes.size(); ++i) {
      const MatR r = expm(MatR(skew(axes[i]) * (two_pi * rates[i] * t)));
      if (max_abs(MatR(r - MatR::Identity(3, 3))) > Real(1e-20)) {
        ++s.active;
        rots.push_back(r);
      }
    }
    s.lie_span = rots.empty() ? 0 : closure_growth_certificate(rots, std::nullopt, 4).lie_span_dimension;
    out.push_back(s);
  }
  return out;
}

std::vector<std::string> eta_demo_names() { return {"split-torus", "so2-pair", "su2-kill"}; }

EtaDemo eta_demo(const std::string& name) {
  EtaDemo d;
  d.name = name;
  auto row = [&d](std::string k, std::string v) { d.rows.push_back({std::move(k), std::move(v)}); };
  if (name == "split-torus") {
    const auto full = eta_split_torus({{2, 3}}, 2);
    const auto line = eta_split_torus({{2, 4}}, 2);
    const auto trivial = eta_split_torus({{1}}, 1);
    row("gen(2,3).closure_dim", std::to_string(full.dimension));
    row("gen(2,4).closure_dim", std::to_string(line.dimension));
    row("gen(2,4).annihilator_rank", std::to_string(line.annihilator_rank));
    row("gen(1).closure_dim", std::to_string(trivial.dimension));
    row("t_dependence", "none (exponent lattice rank is scale invariant)");
    d.ok = full.dimension == 2 && line.dimension == 1 && trivial.dimension == 0;
    d.verdict = "split torus: one generator suffices for every t";
  } else if (name == "so2-pair") {
    const auto sixth = eta_so2({Rotation::from_angle(Rational(1, 3))}, 1);
    const auto pyth = eta_so2({Rotation::from_cosine(Rational(3, 5), Rational(4, 5))}, 1);
    row("angle(1/3).t=1", sixth.str());
    row("cos(3/5).t=1", pyth.str());
    bool dense_finite = true;
    for (int m = 1; m <= 50; ++m)
      dense_finite = dense_finite && !eta_so2({Rotation::from_angle(Rational(1, 3))}, Rational(1, m)).full;
    row("angle(1/3).t=1/m,m<=50", dense_finite ? "finite for all" : "FULL for some");
    const std::vector<Rotation> pair{Rotation::from_cosine(Rational(3, 5), Rational(4, 5)),
                                     Rotation::from_cosine(Rational(5, 13), Rational(12, 13))};
    bool pair_full = true;
    for (const Rational t : {Rational(1, 7), Rational(1, 3), Rational(1, 2), Rational(1), Rational(5, 3), Rational(2)}) {
      const auto c = eta_so2(pair, t);
      row("pair.t=" + q(t), c.str());
      pair_full = pair_full && c.full;
    }
    d.ok = !sixth.full && sixth.order == 6 && pyth.full && dense_finite && pair_full;
    d.verdict = "nonsplit torus: one angle-form generator is finite for a dense set of t, the pair is full on the grid";
  } else if (name == "su2-kill") {
    VecQ e1 = VecQ::Zero(3), e2 = VecQ::Zero(3), e3 = VecQ::Zero(3);
    e1(0) = 1;
    e2(1) = 1;
    e3(2) = 1;
    const auto single = eta_su2_kill({{e1, 1}});
    const auto two = eta_su2_kill({{e1, 1}, {e2, Rational(3, 2)}});
    row("single.t", q(single.t));
    row("single.closure", single.closure);
    row("pair.t", q(two.t));
    row("pair.survivors", std::to_string(two.survivors.size()));
    row("pair.closure", two.closure);
    const std::vector<Real> rates{Real(1), sqrt(Real(2)), sqrt(Real(3))};
    const std::vector<Real> grid{Real("0.1"), Real("0.37"), Real("0.5"), Real(1), Real("1.7")};
    bool span3 = true;
    for (const auto& s : eta_su2_span({e1, e2, e3}, rates, grid)) {
      row("triple.t=" + s.t.str(3), "active " + std::to_string(s.active) + ", lie span " + std::to_string(s.lie_span));
      span3 = span3 && s.active >= 2 && s.lie_span == 3;
    }
    row("triple.status", "evidence (sampled t)");
    d.ok = single.t == 1 && single.closure == "trivial" && two.t == 1 && two.proper_subgroup && span3;
    d.verdict = "su(2): two generators can be killed by one t, three keep a 3-dim span on the grid";
  } else {
    throw BendingError("unknown eta demo '" + name + "'");
  }
  return d;
}

}  // namespace stdquot
