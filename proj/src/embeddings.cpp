#include "stdquot/spinmodel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <regex>
#include <sstream>

namespace stdquot {

std::vector<Eigenspace> rational_eigenspaces(const MatQ& m) {
  const auto n = m.rows();
  if (n == 0) return {};
  Eigen::MatrixXd md(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) md(i, j) = m(i, j).convert_to<double>();
  const Eigen::EigenSolver<Eigen::MatrixXd> es(md, false);
  std::vector<Rational> candidates;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto z = es.eigenvalues()(i);
    if (std::abs(z.imag()) > 1e-6) throw SpinModelError("non-rational eigenvalues");
    const Rational r = rationalize(z.real(), 1000);
    if (std::find(candidates.begin(), candidates.end(), r) == candidates.end()) candidates.push_back(r);
  }
  std::sort(candidates.begin(), candidates.end());
  std::vector<Eigenspace> out;
  Eigen::Index total = 0;
  for (const auto& lambda : candidates) {
    MatQ shifted = m;
    for (Eigen::Index i = 0; i < n; ++i) shifted(i, i) -= lambda;
    MatQ k = kernel<Rational>(shifted);
    if (k.cols() == 0) continue;
    total += k.cols();
    out.push_back({lambda, std::move(k)});
  }
  if (total != n) throw SpinModelError("matrix is not diagonalizable over the rationals");
  return out;
}

void EmbeddingMap::verify() {
  if (!source || !target) throw SpinModelError(name + ": missing source or target");
  const int ds = source->dimension();
  if (static_cast<int>(images.size()) != ds) throw SpinModelError(name + ": wrong number of images");
  matrix = MatQ(target->dimension(), ds);
  for (int a = 0; a < ds; ++a) {
    const auto c = target->coordinates(images[static_cast<size_t>(a)]);
    if (!c) throw SpinModelError(name + ": image of basis element " + std::to_string(a) + " is outside the target");
    matrix.col(a) = *c;
  }
  for (int a = 0; a < ds; ++a)
    for (int b = a + 1; b < ds; ++b) {
      const VecQ c = source->coordinates_unchecked(commutator<Rational>(source->element(a), source->element(b)));
      MatQ lhs = MatQ::Zero(target->matrix_size(), target->matrix_size());
      for (int k = 0; k < ds; ++k)
        if (!is_zero(c(k))) lhs += c(k) * images[static_cast<size_t>(k)];
      if (lhs != commutator<Rational>(images[static_cast<size_t>(a)], images[static_cast<size_t>(b)]))
        throw SpinModelError(name + ": bracket compatibility fails");
    }
  if (rank(matrix) != ds) throw SpinModelError(name + ": map is not injective");
}

namespace {

MatQ block_embed(const MatQ& x, int size, int offset = 0) {
  MatQ m = MatQ::Zero(size, size);
  m.block(offset, offset, x.rows(), x.cols()) = x;
  return m;
}

MatQ diag_form(int p, int q) {
  MatQ b = MatQ::Identity(p + q, p + q);
  for (int i = p; i < p + q; ++i) b(i, i) = -1;
  return b;
}

std::vector<MatQ> symmetric_only(const std::vector<MatQ>& forms) {
  std::vector<MatQ> out;
  for (const auto& b : forms)
    if (b == b.transpose()) out.push_back(b);
  return out;
}

EmbeddingMap spinor_embedding(const std::string& name, int n, const std::string& description,
                              const std::function<MatrixLieAlgebra(const std::vector<MatQ>&, int)>& target_of,
                              TargetInfo info) {
  EmbeddingMap e;
  e.name = name;
  e.description = description;
  e.n = n;
  e.spinor_source = true;
  e.source = std::make_shared<const MatrixLieAlgebra>(spin_lie_algebra(n));
  e.images = e.source->basis();
  e.target = std::make_shared<const MatrixLieAlgebra>(target_of(e.images, e.source->matrix_size()));
  e.info = std::move(info);
  e.verify();
  return e;
}

EmbeddingMap vector_embedding(const std::string& name, int n, const std::string& description,
                              std::shared_ptr<const MatrixLieAlgebra> target,
                              const std::function<MatQ(const MatQ&)>& place, TargetInfo info) {
  EmbeddingMap e;
  e.name = name;
  e.description = description;
  e.n = n;
  e.spinor_source = false;
  e.source = std::make_shared<const MatrixLieAlgebra>(so_vector_algebra(n));
  for (const auto& x : e.source->basis()) e.images.push_back(place(x));
  e.target = std::move(target);
  e.info = std::move(info);
  e.verify();
  return e;
}

std::string nstr(int n) { return std::to_string(n); }

}  // namespace

std::vector<std::string> embedding_names() {
  std::vector<std::string> out;
  for (int n = 2; n <= 8; ++n) out.push_back("spin" + nstr(n) + "1-identity");
  for (int n = 2; n <= 8; ++n) out.push_back("so" + nstr(n) + "1-in-so" + nstr(n) + "2");
  for (int n = 2; n <= 8; ++n) out.push_back("so" + nstr(n) + "1-diag");
  for (const char* s : {"spin41-in-so44", "spin41-in-su22", "spin81-in-so88", "spin71-in-so8c", "spin61-in-sostar8",
                        "so41-in-so44", "so41-in-so43", "so71-in-so8c"})
    out.emplace_back(s);
  return out;
}

EmbeddingMap named_embedding(const std::string& name) {
  static const std::regex identity_re(R"(spin([2-8])1-identity)");
  static const std::regex block_re(R"(so([2-8])1-in-so([2-8])2)");
  static const std::regex diag_re(R"(so([2-8])1-diag)");
  static const std::regex alias_re(R"(identity-spin([2-8])1)");
  std::smatch m;
  if (std::regex_match(name, m, alias_re)) return named_embedding("spin" + std::string(m[1]) + "1-identity");
  if (std::regex_match(name, m, identity_re)) {
    const int n = std::stoi(m[1]);
    return spinor_embedding(
        name, n, "identity on spin(" + nstr(n) + ",1)",
        [n](const std::vector<MatQ>&, int) { return spin_lie_algebra(n); },
        {"Spin(" + nstr(n) + ",1)", 1, spin_lie_algebra(n).matrix_size() / 2, false});
  }
  if (std::regex_match(name, m, block_re) && m[1] == m[2]) {
    const int n = std::stoi(m[1]);
    auto target = std::make_shared<const MatrixLieAlgebra>(so_pq_algebra(n, 2));
    return vector_embedding(
        name, n, "so(" + nstr(n) + ",1) -> so(" + nstr(n) + ",2) as a block", target,
        [n](const MatQ& x) { return block_embed(x, n + 2); }, {"SO(" + nstr(n) + ",2)", 2, 1, false});
  }
  if (std::regex_match(name, m, diag_re)) {
    const int n = std::stoi(m[1]);
    const int s = n + 1;
    const auto so = so_vector_algebra(n);
    std::vector<MatQ> basis;
    for (const auto& x : so.basis()) basis.push_back(block_embed(x, 2 * s));
    for (const auto& x : so.basis()) basis.push_back(block_embed(x, 2 * s, s));
    auto target = std::make_shared<const MatrixLieAlgebra>(
        "so(" + nstr(n) + ",1)+so(" + nstr(n) + ",1)", std::move(basis));
    return vector_embedding(
        name, n, "so(" + nstr(n) + ",1) -> so(" + nstr(n) + ",1)+so(" + nstr(n) + ",1) diagonally", target,
        [s](const MatQ& x) { return MatQ(block_embed(x, 2 * s) + block_embed(x, 2 * s, s)); },
        {"SO(" + nstr(n) + ",1)xSO(" + nstr(n) + ",1)", 2, 1, false});
  }
  if (name == "spin41-in-so44" || name == "spin81-in-so88") {
    const int n = name == "spin41-in-so44" ? 4 : 8;
    const std::string g = n == 4 ? "so(4,4)" : "so(8,8)";
    return spinor_embedding(
        name, n, "spin(" + nstr(n) + ",1) -> " + g + " via the real spin module",
        [g](const std::vector<MatQ>& gens, int size) {
          const auto sym = symmetric_only(invariant_forms(gens, size));
          if (sym.size() != 1) throw SpinModelError("expected a unique invariant symmetric form");
          return stabilizer_algebra(g, size, {}, sym);
        },
        {n == 4 ? "SO(4,4)" : "SO(8,8)", n, 1, false});
  }
  if (name == "spin41-in-su22") {
    return spinor_embedding(
        name, 4, "spin(4,1) = sp(1,1) -> su(2,2) on H^2 = C^4",
        [](const std::vector<MatQ>& gens, int size) {
          const auto sym = symmetric_only(invariant_forms(gens, size));
          if (sym.size() != 1) throw SpinModelError("expected a unique invariant symmetric form");
          const MatQ& b = sym[0];
          // complex structure: traceless element of the commutant that is skew for b
          const auto comm = commutant(gens, size);
          MatQ conds(1 + size * size, static_cast<Eigen::Index>(comm.size()));
          for (size_t i = 0; i < comm.size(); ++i) {
            const MatQ skew = comm[i].transpose() * b + b * comm[i];
            conds(0, static_cast<Eigen::Index>(i)) = comm[i].trace();
            for (Eigen::Index k = 0; k < skew.size(); ++k) conds(1 + k, static_cast<Eigen::Index>(i)) = skew.data()[k];
          }
          const MatQ sol = kernel<Rational>(conds);
          if (sol.cols() == 0) throw SpinModelError("no complex structure in the commutant");
          MatQ k = MatQ::Zero(size, size);
          for (size_t i = 0; i < comm.size(); ++i) k += sol(static_cast<Eigen::Index>(i), 0) * comm[i];
          return stabilizer_algebra("su(2,2)", size, {k}, {b}, {k});
        },
        {"SU(2,2)", 2, 2, false});
  }
  if (name == "spin71-in-so8c" || name == "spin61-in-sostar8") {
    const bool complex = name == "spin71-in-so8c";
    const int n = complex ? 7 : 6;
    const std::string g = complex ? "so(8,C)" : "so*(8)";
    return spinor_embedding(
        name, n, "spin(" + nstr(n) + ",1) -> " + g + " via the spin module",
        [g](const std::vector<MatQ>& gens, int size) {
          return stabilizer_algebra(g, size, commutant(gens, size), invariant_forms(gens, size));
        },
        complex ? TargetInfo{"SO(8,C)", 4, 2, true} : TargetInfo{"SO*(8)", 2, 4, false});
  }
  if (name == "so41-in-so44" || name == "so41-in-so43") {
    const int q = name == "so41-in-so44" ? 4 : 3;
    auto target = std::make_shared<const MatrixLieAlgebra>(so_pq_algebra(4, q));
    return vector_embedding(
        name, 4, "so(4,1) -> so(4," + nstr(q) + ") as a block", target,
        [q](const MatQ& x) { return block_embed(x, 4 + q); }, {"SO(4," + nstr(q) + ")", q, 1, false});
  }
  if (name == "so71-in-so8c") {
    // C^8 = R^8 + i R^8 with the complexified form of signature (7,1)
    const MatQ eta = diag_form(7, 1);
    MatQ j = MatQ::Zero(16, 16);
    j.block(8, 0, 8, 8) = MatQ::Identity(8, 8);
    j.block(0, 8, 8, 8) = -MatQ::Identity(8, 8);
    MatQ re = MatQ::Zero(16, 16), im = MatQ::Zero(16, 16);
    re.block(0, 0, 8, 8) = eta;
    re.block(8, 8, 8, 8) = -eta;
    im.block(0, 8, 8, 8) = eta;
    im.block(8, 0, 8, 8) = eta;
    auto target = std::make_shared<const MatrixLieAlgebra>(stabilizer_algebra("so(8,C)", 16, {j}, {re, im}));
    return vector_embedding(
        name, 7, "so(7,1) -> so(8,C) by complexification", target,
        [](const MatQ& x) { return MatQ(block_embed(x, 16) + block_embed(x, 16, 8)); },
        {"SO(8,C)", 4, 2, true});
  }
  throw SpinModelError("unknown embedding '" + name + "'");
}

VecQ split_coordinates(const MatQ& h, const TargetInfo& info) {
  const auto spaces = rational_eigenspaces(h);
  std::map<Rational, long> count;
  for (const auto& s : spaces) {
    const long dim = static_cast<long>(s.basis.cols());
    if (dim % info.module_multiplicity != 0)
      throw SpinModelError("eigenvalue multiplicity incompatible with the module structure");
    count[s.value] = dim / info.module_multiplicity;
  }
  std::vector<Rational> positive;
  for (const auto& [v, c] : count) {
    if (v <= 0) continue;
    const auto it = count.find(-v);
    if (it == count.end() || it->second != c) throw SpinModelError("element is not hyperbolic in the target");
    for (long i = 0; i < c; ++i) positive.push_back(v);
  }
  if (static_cast<int>(positive.size()) > info.split_rank)
    throw SpinModelError("more nonzero eigenvalues than the split rank");
  std::sort(positive.begin(), positive.end(), std::greater<>());
  VecQ out = VecQ::Zero(info.split_rank);
  for (size_t i = 0; i < positive.size(); ++i) out(static_cast<Eigen::Index>(i)) = positive[i];
  return out;
}

SplitSubspace split_subspace_image(const EmbeddingMap& emb, const std::vector<VecQ>& a_src) {
  auto image = [&](const VecQ& v) {
    if (v.size() != emb.source->dimension()) throw SpinModelError("split vector has the wrong length");
    MatQ h = MatQ::Zero(emb.target->matrix_size(), emb.target->matrix_size());
    for (Eigen::Index a = 0; a < v.size(); ++a)
      if (!is_zero(v(a))) h += v(a) * emb.images[static_cast<size_t>(a)];
    return h;
  };
  std::vector<VecQ> coords;
  for (const auto& v : a_src) coords.push_back(split_coordinates(image(v), emb.info));
  // linearity on the chamber, checked on pairwise sums
  for (size_t i = 0; i < a_src.size(); ++i)
    for (size_t j = i + 1; j < a_src.size(); ++j)
      if (split_coordinates(image(VecQ(a_src[i] + a_src[j])), emb.info) != VecQ(coords[i] + coords[j]))
        throw SpinModelError("inconsistent linear reconstruction of the split image");
  return SplitSubspace::from_basis(emb.info.split_rank, coords);
}

namespace {

void write_matrix_line(std::ostream& out, const MatQ& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (i || j ? " " : "") << format_rational(m(i, j));
  out << '\n';
}

MatQ read_matrix_line(const std::string& line, int size, int lineno) {
  std::istringstream in(line);
  MatQ m(size, size);
  std::string tok;
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) {
      if (!(in >> tok)) throw SpinModelError("line " + std::to_string(lineno) + ": too few matrix entries");
      try {
        m(i, j) = parse_rational(tok);
      } catch (const std::exception& e) {
        throw SpinModelError("line " + std::to_string(lineno) + ": " + e.what());
      }
    }
  if (in >> tok) throw SpinModelError("line " + std::to_string(lineno) + ": too many matrix entries");
  return m;
}

}  // namespace

void write_embedding(std::ostream& out, const EmbeddingMap& emb) {
  out << "embedding " << emb.name << '\n';
  out << "description " << emb.description << '\n';
  out << "source " << (emb.spinor_source ? "spin" : "so") << ' ' << emb.n << '\n';
  out << "target " << emb.target->name() << ' ' << emb.target->matrix_size() << ' ' << emb.target->dimension() << '\n';
  out << "info " << emb.info.group << ' ' << emb.info.split_rank << ' ' << emb.info.module_multiplicity << ' '
      << (emb.info.complex_structure ? 1 : 0) << '\n';
  out << "target_basis\n";
  for (const auto& b : emb.target->basis()) write_matrix_line(out, b);
  out << "images\n";
  for (const auto& b : emb.images) write_matrix_line(out, b);
  out << "end\n";
}

EmbeddingMap read_embedding(std::istream& in) {
  EmbeddingMap e;
  std::string line;
  int lineno = 0;
  auto next = [&](const char* what) {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line[0] != '#') return;
    }
    throw SpinModelError(std::string("unexpected end of input, expected ") + what);
  };
  auto keyword = [&](const std::string& key) -> std::string {
    next(key.c_str());
    if (line.rfind(key, 0) != 0)
      throw SpinModelError("line " + std::to_string(lineno) + ": expected '" + key + "'");
    return line.size() > key.size() ? line.substr(key.size() + 1) : "";
  };
  e.name = keyword("embedding");
  e.description = keyword("description");
  {
    std::istringstream s(keyword("source"));
    std::string kind;
    if (!(s >> kind >> e.n) || (kind != "spin" && kind != "so"))
      throw SpinModelError("line " + std::to_string(lineno) + ": malformed source");
    e.spinor_source = kind == "spin";
    e.source = std::make_shared<const MatrixLieAlgebra>(e.spinor_source ? spin_lie_algebra(e.n) : so_vector_algebra(e.n));
  }
  std::string tname;
  int size = 0, dim = 0;
  {
    std::istringstream s(keyword("target"));
    if (!(s >> tname >> size >> dim) || size <= 0 || dim <= 0)
      throw SpinModelError("line " + std::to_string(lineno) + ": malformed target");
  }
  {
    std::istringstream s(keyword("info"));
    int cx = 0;
    if (!(s >> e.info.group >> e.info.split_rank >> e.info.module_multiplicity >> cx))
      throw SpinModelError("line " + std::to_string(lineno) + ": malformed info");
    e.info.complex_structure = cx != 0;
  }
  keyword("target_basis");
  std::vector<MatQ> basis;
  for (int i = 0; i < dim; ++i) {
    next("target basis matrix");
    basis.push_back(read_matrix_line(line, size, lineno));
  }
  e.target = std::make_shared<const MatrixLieAlgebra>(tname, std::move(basis));
  keyword("images");
  for (int i = 0; i < e.source->dimension(); ++i) {
    next("image matrix");
    e.images.push_back(read_matrix_line(line, size, lineno));
  }
  keyword("end");
  e.verify();
  return e;
}

}  // namespace stdquot
