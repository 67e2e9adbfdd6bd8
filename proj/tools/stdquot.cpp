#include "stdquot/bending.hpp"
#include "stdquot/harmonics.hpp"
#include "stdquot/properness.hpp"
#include "stdquot/report.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace stdquot;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string format = "text";
  std::uint64_t seed = 20240601;
  std::string catalog_path;
  unsigned threads = 0;
  bool timings = false;
};

std::string vec_str(const VecQ& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_rational(v(i));
  return s + ")";
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

std::string seconds(double s) {
  std::ostringstream o;
  o.precision(3);
  o << std::fixed << s << "s";
  return o.str();
}

Catalog load_catalog(const Globals& g) {
  return Catalog::load(g.catalog_path.empty() ? Catalog::default_path() : g.catalog_path);
}

void table_verify(Report& rep, const Globals& g, const std::string& id, bool all, std::optional<int> n) {
  const auto cat = load_catalog(g);
  rep.catalog_hash = cat.sha256();
  std::vector<std::string> ids;
  if (all) {
    ids = case_labels();
  } else {
    (void)cat.lookup(id, n);  // unknown ids and bad n throw
    ids = {id};
  }
  ScanOptions opts;
  opts.threads = g.threads;
  for (const auto& cid : ids) {
    ReportItem item;
    item.id = cid;
    bool ok = true;
    int instances = 0;
    for (const auto& c : cat.cases()) {
      if (c.id != cid || (n && c.n && *c.n != *n)) continue;
      ++instances;
      const auto row = verify_table_row(c, opts);
      const std::string p = c.n ? "n=" + std::to_string(*c.n) + "." : "";
      item.add(p + "triple", c.G.name + " / " + c.H.name + " / " + c.L.name);
      item.add(p + "proper", bool_str(row.proper));
      item.add(p + "weyl_scan", std::to_string(row.certificate.checked_count) + "/" +
                                    std::to_string(row.certificate.group_order) + " " + c.weyl_type);
      item.add(p + "d", "dG=" + std::to_string(row.dG) + " dH=" + std::to_string(row.dH) +
                            " dL=" + std::to_string(row.dL));
      item.add(p + "cocompact", bool_str(row.cocompact));
      if (row.certificate.witness)
        item.add(p + "counterexample", "weyl element " + std::to_string(row.certificate.witness->weyl_index) +
                                           ", vector " + vec_str(row.certificate.witness->vector));
      else if (row.proper && !row.cocompact)
        item.add(p + "counterexample", "dG != dH + dL");
      if (g.timings) item.add(p + "elapsed", seconds(row.elapsed.count()));
      ok = ok && row.proper && row.cocompact;
    }
    if (instances == 0) continue;
    item.status = ok ? ItemStatus::Pass : ItemStatus::Fail;
    rep.items.push_back(std::move(item));
  }
  if (rep.items.empty()) throw UsageError("no catalog instance matches the selection");
}

std::string spherical_str(const std::map<int, long>& m, int jmax) {
  std::string s = "{";
  bool first = true;
  for (const auto& [j, mult] : m) {
    if (jmax >= 0 && j > jmax) continue;
    s += (first ? "" : ", ") + std::to_string(j) + ":" + std::to_string(mult);
    first = false;
  }
  return s + "}";
}

void branch(Report& rep, const std::string& name, std::optional<int> jmax) {
  EmbeddingMap emb;
  try {
    emb = named_embedding(name);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  ReportItem item;
  item.id = emb.name;
  item.add("target", emb.info.group + " (" + emb.target->name() + ")");
  item.add("target_dim", std::to_string(emb.target->dimension()));
  try {
    const auto t = isotypic_decomposition(emb);
    const int cut = jmax.value_or(-1);
    item.add("spherical", spherical_str(t.spherical, cut));
    if (jmax && t.jmax > *jmax) item.add("truncated", "entries above j=" + std::to_string(*jmax) + " omitted");
    if (t.complex_target) {
      item.add("spherical_complex", spherical_str(t.complex_spherical(), cut));
      item.add("multiplicity_convention", "real (complex multiplicity is half)");
    }
    std::string ns;
    for (const auto& e : t.nonspherical)
      ns += (ns.empty() ? "" : ", ") + e.label + "x" + std::to_string(e.multiplicity) + " (dim " + e.dim.str() + ")";
    item.add("nonspherical", ns.empty() ? "none" : ns);
    item.add("accounted_dim", t.accounted_dim().str());
    item.add("methods", "casimir and weight methods agree");
    item.add("k", std::to_string(bending_k(t)));
    const auto ind = rigidity_indicator(emb, t);
    item.add("gphi_dim", std::to_string(ind.gphi_dim));
    item.add("indicator", ind.str());
    if (ind.lower_bound_only) item.add("note", "n = 2: lower bound only");
    item.status = ItemStatus::Pass;
  } catch (const HarmonicsError& e) {
    item.status = ItemStatus::Fail;
    item.add("error", e.what());
  }
  rep.items.push_back(std::move(item));
}

std::vector<Rational> parse_t_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(parse_rational(tok));
    } catch (const std::exception&) {
      throw ConfigError(0, "--t", "'" + tok + "' is not an exact rational or decimal");
    }
  }
  if (out.empty()) throw ConfigError(0, "--t", "empty list");
  return out;
}

void bend_command(Report& rep, const std::string& path, const std::string& t_list) {
  const auto d = load_bending_config(path);
  if (d.bend_vectors.empty()) throw ConfigError(0, "bend", "config has no bend vectors");
  const auto grid = t_list.empty() ? d.t_grid : parse_t_list(t_list);
  if (grid.empty()) throw ConfigError(0, "t", "no t values");
  PrecisionScope scope(d.precision);
  rep.precision = d.precision;
  std::vector<MatQ> exact;
  for (const auto& [sym, m] : d.images) exact.push_back(m);
  const int base_forms = invariant_form_dimension(exact);
  for (const auto& t : grid) {
    ReportItem item;
    item.id = "t=" + format_rational(t);
    try {
      const auto phi = bend(d, d.bend_vectors, t);
      ClosureCertificate cert;
      if (phi.exact) {
        cert = closure_growth_certificate(exact);
      } else {
        std::vector<MatR> gens;
        for (const auto& [sym, m] : phi.images) gens.push_back(m);
        cert = closure_growth_certificate(gens);
      }
      std::ostringstream res;
      res.precision(3);
      res << std::scientific << phi.max_residual;
      item.add("relator_residual", phi.exact ? "0 (exact)" : res.str());
      std::ostringstream tol;
      tol << d.tolerance;
      item.add("tolerance", tol.str());
      item.add("form_dim", std::to_string(base_forms) + "->" + std::to_string(cert.form_dimension));
      item.add("form_status", cert.form_exact ? "exact" : "numeric");
      item.add("lie_span_dim", std::to_string(cert.lie_span_dimension));
      item.add("words", std::to_string(cert.words_used) + " used, " + std::to_string(cert.words_skipped) + " skipped");
      item.add("escaped", bool_str(cert.escaped) + " (" + cert.status + ")");
      item.add("rank_threshold", "1e-25 relative");
      item.status = ItemStatus::Pass;
    } catch (const BendingError& e) {
      item.status = ItemStatus::Fail;
      item.add("error", e.what());
    }
    rep.items.push_back(std::move(item));
  }
}

void eta_command(Report& rep, const std::string& demo) {
  std::vector<std::string> names = demo == "all" ? eta_demo_names() : std::vector<std::string>{demo};
  for (const auto& name : names) {
    EtaDemo d;
    try {
      d = eta_demo(name);
    } catch (const BendingError& e) {
      throw UsageError(e.what());
    }
    ReportItem item;
    item.id = d.name;
    for (const auto& r : d.rows) item.add(r.key, r.value);
    item.add("verdict", d.verdict);
    item.status = d.ok ? ItemStatus::Pass : ItemStatus::Fail;
    rep.items.push_back(std::move(item));
  }
}

void crosscheck(Report& rep, const Globals& g, const std::string& id) {
  const auto cat = load_catalog(g);
  rep.catalog_hash = cat.sha256();
  if (!id.empty()) (void)cat.lookup(id);
  for (const auto& c : cat.cases()) {
    if (!id.empty() && c.id != id) continue;
    const auto r = cross_check_case(c);
    ReportItem item;
    item.id = r.label;
    item.status = r.status == CrossCheckStatus::Pass           ? ItemStatus::Pass
                  : r.status == CrossCheckStatus::Mismatch     ? ItemStatus::Fail
                  : r.status == CrossCheckStatus::Informational ? ItemStatus::Informational
                                                                : ItemStatus::NotDecidable;
    if (!c.embedding.empty()) item.add("embedding", c.embedding);
    if (!r.computed.empty()) item.add("computed", r.computed);
    item.add("stored", "q1=" + bool_str(c.verdicts.q1) + " q2=" + bool_str(c.verdicts.q2) +
                           " q3=" + bool_str(c.verdicts.q3));
    item.add("detail", r.detail);
    rep.items.push_back(std::move(item));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Standard quotients: properness, branching and bending checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "kv"}));
  app.add_option("--seed", g.seed, "Seed recorded in the report");
  app.add_option("--catalog", g.catalog_path, "Catalog file");
  app.add_option("--threads", g.threads, "Worker threads for Weyl scans (0 = auto)");
  app.add_flag("--timings", g.timings, "Include wall-clock timings (breaks byte-identical output)");

  auto* table = app.add_subcommand("table", "Table of proper cocompact triples");
  table->require_subcommand(1);
  table->fallthrough();
  auto* verify = table->add_subcommand("verify", "Verify properness and cocompactness");
  std::string case_id;
  bool all = false;
  std::optional<int> n;
  auto* case_opt = verify->add_option("--case", case_id, "Case id");
  auto* all_opt = verify->add_flag("--all", all, "All cases");
  case_opt->excludes(all_opt);
  verify->add_option("--n", n, "Restrict to one value of n");

  auto* br = app.add_subcommand("branch", "Spherical harmonics content of a shipped embedding");
  std::string emb_name;
  std::optional<int> jmax;
  br->add_option("--embedding", emb_name, "Embedding name")->required();
  br->add_option("--jmax", jmax, "Largest j to print")->check(CLI::NonNegativeNumber);

  auto* bd = app.add_subcommand("bend", "Bending deformation from a config file");
  std::string config, t_list;
  bd->add_option("--config", config, "Config file")->required();
  bd->add_option("--t", t_list, "Comma separated t values");

  auto* eta = app.add_subcommand("eta", "Closure instances for tori and SU(2)");
  std::string demo;
  eta->add_option("--demo", demo, "split-torus, so2-pair, su2-kill or all")->required();

  auto* cc = app.add_subcommand("crosscheck", "Compare rigidity indicators with stored verdicts");
  bool cc_all = false;
  std::string cc_case;
  auto* cc_all_opt = cc->add_flag("--all", cc_all, "All catalog instances");
  cc->add_option("--case", cc_case, "Case id")->excludes(cc_all_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Report rep;
  rep.tool_version = std::string("stdquot ") + STDQUOT_VERSION;
  rep.seed = g.seed;
  rep.precision = precision_digits();
  std::string command;
  for (int i = 1; i < argc; ++i) command += (i > 1 ? " " : "") + std::string(argv[i]);
  rep.command = command;
  try {
    rep.catalog_hash = load_catalog(g).sha256();
    if (*verify) {
      if (!all && case_id.empty()) throw UsageError("table verify needs --case or --all");
      table_verify(rep, g, case_id, all, n);
    } else if (*br) {
      branch(rep, emb_name, jmax);
    } else if (*bd) {
      bend_command(rep, config, t_list);
    } else if (*eta) {
      eta_command(rep, demo);
    } else if (*cc) {
      if (!cc_all && cc_case.empty()) throw UsageError("crosscheck needs --all or --case");
      crosscheck(rep, g, cc_case);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const GroupError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }
  std::cout << (g.format == "kv" ? rep.render_kv() : rep.render_text());
  return rep.any_fail() ? 1 : 0;
}
