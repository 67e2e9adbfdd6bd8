// Acceptance run: one PASS/FAIL line per criterion.
#include "stdquot/bending.hpp"
#include "stdquot/groups.hpp"
#include "stdquot/harmonics.hpp"
#include "stdquot/properness.hpp"
#include "stdquot/spinmodel.hpp"
#include "stdquot/weights.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace stdquot;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Check {
  std::ostringstream notes;
  bool ok = true;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes << " [" << what << "]";
    }
  }
};

Integer binom(int a, int b) {
  if (b < 0 || a < b) return 0;
  Integer r = 1;
  for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

const Catalog& catalog() {
  static const Catalog cat = Catalog::load(Catalog::default_path());
  return cat;
}

void table_rows(Check& c) {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0;
  for (const auto& tc : catalog().cases()) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto row = verify_table_row(tc);
    worst = std::max(worst, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    c.require(row.proper && row.cocompact, "row " + tc.label());
    if (tc.id == "6" || tc.id == "6'") c.require(row.certificate.checked_count == 5160960, "D8 scan count");
  }
  c.require(worst < 300, "worst row over 5 minutes");
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.notes << " rows=" << catalog().cases().size() << " worst_s=" << worst << " total_s=" << total;
}

void cross_check(Check& c) {
  int mismatches = 0, passes = 0;
  for (const auto& tc : catalog().cases()) {
    const auto r = cross_check_case(tc);
    if (r.status == CrossCheckStatus::Mismatch) ++mismatches;
    if (r.status == CrossCheckStatus::Pass) ++passes;
    if (tc.id == "5-2")
      c.require(r.computed == "FULL_ZARISKI_DENSE" && tc.verdicts.q3 && r.status == CrossCheckStatus::Pass, "5-2");
    if (tc.id == "2-1" || tc.id == "5-1" || tc.id == "5'")
      c.require(r.computed == "CENTRALIZER_ONLY" && !tc.verdicts.q1 && r.status == CrossCheckStatus::Pass,
                tc.label());
  }
  c.require(mismatches == 0, "mismatches");
  c.notes << " pass=" << passes << " mismatch=" << mismatches;
}

void branching(Check& c) {
  int count = 0;
  for (const auto& name : embedding_names()) {
    try {
      const auto emb = named_embedding(name);
      const auto t = isotypic_decomposition(emb);  // throws when the two methods disagree
      c.require(t.accounted_dim() == t.target_dim, name + " bookkeeping");
      ++count;
    } catch (const std::exception& e) {
      c.require(false, name + ": " + e.what());
    }
  }
  const auto emb = named_embedding("spin41-in-so44");
  const auto t = isotypic_decomposition(emb);
  c.require(t.spherical == std::map<int, long>{{0, 3}, {1, 3}}, "spin41-in-so44 spherical");
  c.require(bending_k(t) == 3, "spin41-in-so44 k");
  c.require(g_phi(emb).dimension == 28, "spin41-in-so44 gphi");
  c.notes << " embeddings=" << count;
}

void labels(Check& c) {
  for (int n = 2; n <= 8; ++n) {
    const auto rs = source_root_system(n);
    for (int j = 0; j <= 10; ++j) {
      const auto l = spherical_label(n, j);
      VecQ e = VecQ::Zero(rs.rank());
      e(0) = j;
      const bool ok = l.dim == binom(n + j, j) - binom(n + j - 2, j - 2) &&
                      l.dim == weyl_dim(rs, rs.from_coordinates(e)) &&
                      l.laplace_eigenvalue == -static_cast<long>(j) * (j + n - 1);
      c.require(ok, "n=" + std::to_string(n) + " j=" + std::to_string(j));
    }
  }
}

void identity(Check& c) {
  for (int n = 3; n <= 8; ++n) {
    const auto emb = named_embedding("spin" + std::to_string(n) + "1-identity");
    const auto t = isotypic_decomposition(emb);
    bool none = true;
    for (const auto& [j, m] : t.spherical) none = none && (j == 0 || m == 0);
    c.require(none && rigidity_indicator(emb, t).kind == RigidityKind::CentralizerOnly, "n=" + std::to_string(n));
  }
}

void bending_toy(Check& c) {
  const auto d = load_bending_config(std::string(STDQUOT_DATA_DIR) + "/genus2.cfg");
  const auto b0 = bend(d, d.bend_vectors, 0);
  bool exact = b0.exact;
  for (const auto& [name, m] : d.images) exact = exact && b0.images.at(name) == to_real(m);
  c.require(exact, "t=0 not bit-exact");
  std::vector<MatQ> gens;
  for (const auto& [name, m] : d.images) gens.push_back(m);
  c.require(closure_growth_certificate(gens).form_dimension == 1, "form dim at t=0");
  for (const Rational t : {Rational(1, 10), Rational(1, 2), Rational(1)}) {
    const auto bt = bend(d, d.bend_vectors, t);
    c.require(bt.max_residual <= 1e-9 && bt.precision == 50, "residual at t=" + format_rational(t));
    std::vector<MatR> real;
    for (const auto& [name, m] : bt.images) real.push_back(m);
    c.require(closure_growth_certificate(real).form_dimension == 0, "form dim at t=" + format_rational(t));
    c.notes << " res(" << format_rational(t) << ")=" << bt.max_residual;
  }
  MatQ v = MatQ::Zero(3, 3);
  v(0, 1) = 1;
  bool threw = false;
  try {
    (void)bend(d, {v}, 1);
  } catch (const BendingError&) {
    threw = true;
  }
  c.require(threw, "precondition violation accepted");
}

void eta(Check& c) {
  c.require(eta_split_torus({{2, 3}}, 2).dimension == 2, "torus (2,3)");
  c.require(eta_split_torus({{2, 4}}, 2).dimension == 1, "torus (2,4)");
  const auto sixth = eta_so2({Rotation::from_angle(Rational(1, 3))}, 1);
  c.require(!sixth.full && sixth.order == 6, "so2 pi/3");
  c.require(eta_so2({Rotation::from_cosine(Rational(3, 5), Rational(4, 5))}, 1).full, "so2 (3/5,4/5)");
  VecQ x(3), y(3), z(3);
  x << 1, 0, 0;
  y << 0, 1, 0;
  z << 0, 0, 1;
  const auto kill = eta_su2_kill({{x, 1}, {y, Rational(3, 2)}});
  c.require(kill.proper_subgroup, "su2 kill witness");
  const std::vector<Real> rates = {Real(1), sqrt(Real(2)), sqrt(Real(3))};
  for (const auto& s : eta_su2_span({x, y, z}, rates, {Real("0.5"), Real("0.7"), Real("1.3")}))
    c.require(s.lie_span == 3, "su2 span sample");
  for (const auto& name : eta_demo_names()) {
    const auto a = eta_demo(name), b = eta_demo(name);
    bool same = a.ok && a.rows.size() == b.rows.size() && a.verdict == b.verdict;
    for (size_t i = 0; same && i < a.rows.size(); ++i) same = a.rows[i].value == b.rows[i].value;
    c.require(same, "demo " + name);
  }
  c.notes << " kill_t=" << format_rational(kill.t) << " (" << kill.closure << ")";
}

void properties(Check& c) {
  std::mt19937_64 rng(kSeed);
  int weights = 0;
  for (const auto& tag : {"A3", "A4", "B3", "C3", "D4", "G2", "B4"}) {
    const auto rs = RootSystem::parse(tag);
    for (int trial = 0; trial < 50; ++trial) {
      Weight w = Weight::zero(rs.rank());
      const int steps = std::uniform_int_distribution<int>(0, 3)(rng);
      for (int s = 0; s < steps; ++s)
        w.coords[static_cast<size_t>(std::uniform_int_distribution<int>(0, rs.rank() - 1)(rng))] += 1;
      c.require(full_weight_multiset(rs, w).total() == weyl_dim(rs, w).convert_to<long>(), tag);
      ++weights;
    }
  }
  for (const auto& name : embedding_names()) {
    const auto emb = named_embedding(name);
    c.require(emb.source->closed_under_bracket() && emb.target->closed_under_bracket() &&
                  emb.source->jacobi_check(rng, 100) && emb.target->jacobi_check(rng, 100),
              "jacobi " + name);
  }
  const auto g2 = g2_split_algebra();
  c.require(g2.closed_under_bracket() && g2.jacobi_check(rng, 100), "jacobi g2");
  int translates = 0;
  for (const auto& tc : catalog().cases()) {
    const int r = tc.G.real_rank();
    const auto aH = SplitSubspace::from_basis(r, tc.aH_basis);
    const bool base = is_proper(tc.weyl_type, aH, SplitSubspace::from_basis(r, tc.aL_basis)).proper;
    const ClassicalWeyl weyl(tc.weyl_type[0] == 'D' ? Family::D : Family::B, r);
    std::uniform_int_distribution<std::uint64_t> pick(0, weyl.size() - 1);
    for (int k = 0; k < 20; ++k, ++translates) {
      const auto w = pick(rng);
      std::vector<VecQ> moved;
      for (const auto& v : tc.aL_basis) moved.push_back(weyl.apply(w, v));
      c.require(is_proper(tc.weyl_type, aH, SplitSubspace::from_basis(r, moved)).proper == base, tc.label());
    }
    if (tc.dual) {
      const TripleCase* d = catalog().find(*tc.dual);
      c.require(d && verify_table_row(*d).proper == verify_table_row(tc).proper, "dual " + tc.label());
    }
  }
  c.notes << " seed=" << kSeed << " weights=" << weights << " translates=" << translates;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"table rows proper and cocompact", table_rows},
      {"classification cross-check", cross_check},
      {"branching exactness", branching},
      {"spherical labels", labels},
      {"identity embeddings", identity},
      {"bending toy", bending_toy},
      {"eta instances", eta},
      {"property suites", properties},
  };
  bool all = true;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    all = all && c.ok;
    std::cout << "criterion " << i + 1 << ": " << (c.ok ? "PASS" : "FAIL") << " " << criteria[i].first
              << c.notes.str() << std::endl;
  }
  return all ? 0 : 1;
}
