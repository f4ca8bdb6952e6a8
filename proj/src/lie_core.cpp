#include "affcoh/lie_core.hpp"

#include <algorithm>

namespace affcoh {

svec lie_algebra::bracket(int i, int j) const {
  if (i == j) return {};
  bool flip = i > j;
  auto it = table.find(flip ? std::make_pair(j, i) : std::make_pair(i, j));
  if (it == table.end()) return {};
  return flip ? it->second.neg() : it->second;
}

svec lie_algebra::bracket_vec(const svec& x, const svec& y) const {
  svec z;
  for (const auto& [i, xi] : x.e)
    for (const auto& [j, yj] : y.e) {
      if (i == j) continue;
      z.add_scaled(bracket(i, j), xi * yj);
    }
  return z;
}

std::vector<std::string> lie_algebra::validate() const {
  std::vector<std::string> bad;
  for (const auto& [ij, c] : table) {
    if (ij.first >= ij.second)
      bad.push_back("table key not upper-triangular: (" + std::to_string(ij.first) +
                    "," + std::to_string(ij.second) + ")");
    if (!c.e.empty() && (c.e.back().first >= dim || c.e.front().first < 0))
      bad.push_back("bracket coefficient index out of range");
  }
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int k = j + 1; k < dim; ++k) {
        svec s = bracket_vec(bracket(i, j), svec_unit(k));
        s.add_scaled(bracket_vec(bracket(j, k), svec_unit(i)), rational(1));
        s.add_scaled(bracket_vec(bracket(k, i), svec_unit(j)), rational(1));
        if (!s.zero())
          bad.push_back("Jacobi fails on (" + std::to_string(i) + "," +
                        std::to_string(j) + "," + std::to_string(k) + ")");
      }
  return bad;
}

lie_ptr make_algebra(std::vector<std::string> labels,
                     std::map<std::pair<int, int>, svec> table) {
  auto a = std::make_shared<lie_algebra>();
  a->dim = (int)labels.size();
  a->labels = std::move(labels);
  a->table = std::move(table);
  auto bad = a->validate();
  if (!bad.empty()) throw error("lie_algebra: " + bad.front());
  return a;
}

lie_ptr sl2() {
  std::map<std::pair<int, int>, svec> t;
  /* e=0, f=1, h=2: [e,f]=h, [h,e]=2e, [h,f]=-2f */
  t[{0, 1}] = svec_unit(2);
  svec he;
  he.push(0, rational(-2)); /* [e,h] = -2e */
  t[{0, 2}] = he;
  svec fh;
  fh.push(1, rational(2)); /* [f,h] = 2f */
  t[{1, 2}] = fh;
  return make_algebra({"e", "f", "h"}, std::move(t));
}

lie_ptr abelian(int n) {
  std::vector<std::string> l;
  for (int i = 0; i < n; ++i) l.push_back("a" + std::to_string(i));
  return make_algebra(std::move(l), {});
}

svec representation::act_vec(const svec& x, const svec& v) const {
  svec y;
  for (const auto& [i, xi] : x.e) y.add_scaled(action[i].apply(v), xi);
  return y;
}

std::vector<std::string> representation::validate() const {
  std::vector<std::string> bad;
  if ((int)action.size() != alg->dim) {
    bad.push_back("action count != algebra dim");
    return bad;
  }
  for (const auto& m : action)
    if (m.n_rows != module_dim || m.n_cols != module_dim)
      bad.push_back("action matrix shape");
  for (int i = 0; i < alg->dim && bad.empty(); ++i)
    for (int j = i + 1; j < alg->dim; ++j) {
      sparse_matrix lhs = action[i].mul(action[j]).add_scaled(action[j].mul(action[i]), rational(-1));
      sparse_matrix rhs(module_dim, module_dim);
      for (const auto& [k, c] : alg->bracket(i, j).e)
        rhs = rhs.add_scaled(action[k], c);
      if (!(lhs == rhs))
        bad.push_back("commutator identity fails on (" + alg->labels[i] + "," +
                      alg->labels[j] + ")");
    }
  return bad;
}

representation make_rep(lie_ptr alg, int module_dim,
                        std::vector<sparse_matrix> action,
                        std::vector<std::string> module_labels) {
  representation r;
  r.alg = std::move(alg);
  r.module_dim = module_dim;
  r.action = std::move(action);
  if (module_labels.empty())
    for (int i = 0; i < module_dim; ++i) module_labels.push_back("v" + std::to_string(i));
  r.module_labels = std::move(module_labels);
  auto bad = r.validate();
  if (!bad.empty()) throw error("representation: " + bad.front());
  return r;
}

representation trivial_rep(lie_ptr alg, int n) {
  std::vector<sparse_matrix> a(alg->dim, sparse_matrix(n, n));
  return make_rep(std::move(alg), n, std::move(a));
}

representation adjoint_rep(lie_ptr alg) {
  int n = alg->dim;
  std::vector<sparse_matrix> a;
  a.reserve(n);
  for (int i = 0; i < n; ++i) {
    sparse_matrix m(n, n);
    for (int j = 0; j < n; ++j)
      for (const auto& [k, c] : alg->bracket(i, j).e) m.set(k, j, c);
    a.push_back(std::move(m));
  }
  auto labels = alg->labels;
  return make_rep(std::move(alg), n, std::move(a), std::move(labels));
}

representation sl2_standard() {
  auto g = sl2();
  sparse_matrix e(2, 2), f(2, 2), h(2, 2);
  e.set(0, 1, rational(1));
  f.set(1, 0, rational(1));
  h.set(0, 0, rational(1));
  h.set(1, 1, rational(-1));
  return make_rep(g, 2, {e, f, h}, {"u0", "u1"});
}

representation direct_sum(const representation& a, const representation& b) {
  if (a.alg != b.alg) throw error("direct_sum: different algebras");
  int n = a.module_dim + b.module_dim;
  std::vector<sparse_matrix> act;
  for (int i = 0; i < a.alg->dim; ++i) {
    sparse_matrix m(n, n);
    for (const auto& [r, c, v] : a.action[i].triplets()) m.set(r, c, v);
    for (const auto& [r, c, v] : b.action[i].triplets())
      m.set(r + a.module_dim, c + a.module_dim, v);
    act.push_back(std::move(m));
  }
  std::vector<std::string> labels;
  for (const auto& l : a.module_labels) labels.push_back("l." + l);
  for (const auto& l : b.module_labels) labels.push_back("r." + l);
  return make_rep(a.alg, n, std::move(act), std::move(labels));
}

int hom_index(const representation& src, const representation& dst, int p, int q) {
  (void)src;
  return p * dst.module_dim + q;
}

sparse_matrix hom_matrix(const representation& src, const representation& dst,
                         const svec& coords) {
  sparse_matrix f(dst.module_dim, src.module_dim);
  for (const auto& [i, v] : coords.e) {
    if (i >= src.module_dim * dst.module_dim) throw error("hom_matrix: index out of range");
    f.set(i % dst.module_dim, i / dst.module_dim, v);
  }
  return f;
}

representation hom_module(const representation& src, const representation& dst) {
  if (src.alg != dst.alg) throw error("hom_module: different algebras");
  int n = src.module_dim * dst.module_dim;
  std::vector<sparse_matrix> act;
  for (int x = 0; x < src.alg->dim; ++x) {
    std::vector<sparse_matrix::triplet> t;
    for (int p = 0; p < src.module_dim; ++p)
      for (int q = 0; q < dst.module_dim; ++q) {
        int col = p * dst.module_dim + q;
        for (const auto& [qq, dc, v] : dst.action[x].triplets())
          if (dc == q) t.emplace_back(p * dst.module_dim + qq, col, v);
        for (const auto& [pr, pc, v] : src.action[x].triplets())
          if (pr == p) t.emplace_back(pc * dst.module_dim + q, col, -v);
      }
    act.push_back(sparse_matrix::from_triplets(n, n, t));
  }
  std::vector<std::string> labels;
  for (int p = 0; p < src.module_dim; ++p)
    for (int q = 0; q < dst.module_dim; ++q)
      labels.push_back(src.module_labels[p] + "->" + dst.module_labels[q]);
  return make_rep(src.alg, n, std::move(act), std::move(labels));
}

std::vector<svec> invariants(const representation& r, exec ex) {
  std::vector<svec> rows;
  for (const auto& m : r.action)
    for (const auto& rv : m.row) rows.push_back(rv);
  /* rows of all action matrices stacked; kernel = joint kernel */
  incremental_rref rr(r.module_dim);
  rr.add_rows(rows, ex);
  return rr.kernel_basis();
}

/* ---- gradings ---- */

namespace {

bool diagonal_integer(const sparse_matrix& m, std::vector<long>& diag) {
  diag.assign(m.n_rows, 0);
  for (int r = 0; r < m.n_rows; ++r)
    for (const auto& [c, v] : m.row[r].e) {
      if (c != r) return false;
      if (v.get_den() != 1) return false;
      if (!v.get_num().fits_slong_p()) return false;
      diag[r] = v.get_num().get_si();
    }
  return true;
}

} // namespace

std::vector<std::string> graded_rep::validate() const {
  std::vector<std::string> bad;
  if (h_index < 0 || h_index >= alg->dim) {
    bad.push_back("grading element index out of range");
    return bad;
  }
  /* ad(h) diagonal with the stated algebra weights */
  for (int j = 0; j < alg->dim; ++j) {
    svec b = alg->bracket(h_index, j);
    svec expect = svec_unit(j);
    expect.scale(rational(algebra_weights[j]));
    if (!(b == expect) && !(b.zero() && algebra_weights[j] == 0))
      bad.push_back("ad(h) not diagonal at " + alg->labels[j]);
  }
  /* rho(h) diagonal with the module weights */
  std::vector<long> d;
  if (!diagonal_integer(action[h_index], d))
    bad.push_back("rho(h) not integer-diagonal");
  else
    for (int b2 = 0; b2 < module_dim; ++b2)
      if (d[b2] != module_weights[b2])
        bad.push_back("rho(h) eigenvalue mismatch at module index " + std::to_string(b2));
  /* weight compatibility of every action matrix */
  for (int i = 0; i < alg->dim; ++i)
    for (int r = 0; r < module_dim; ++r)
      for (const auto& [c, v] : action[i].row[r].e)
        if (module_weights[r] != module_weights[c] + algebra_weights[i]) {
          bad.push_back("action of " + alg->labels[i] + " not weight-homogeneous");
          goto next;
        }
next:
  /* commutator identity on columns whose intermediates are representable */
  for (int i = 0; i < alg->dim; ++i)
    for (int j = i + 1; j < alg->dim; ++j) {
      svec br = alg->bracket(i, j);
      for (int b2 = 0; b2 < module_dim; ++b2) {
        long w = module_weights[b2];
        if (!representable(w + algebra_weights[i]) || !representable(w + algebra_weights[j]) ||
            !representable(w + algebra_weights[i] + algebra_weights[j]))
          continue;
        svec v = svec_unit(b2);
        svec lhs = act(i, act(j, v));
        lhs.add_scaled(act(j, act(i, v)), rational(-1));
        svec rhs;
        for (const auto& [k, c] : br.e) rhs.add_scaled(act(k, v), c);
        lhs.add_scaled(rhs, rational(-1));
        if (!lhs.zero()) {
          bad.push_back("graded commutator identity fails on (" + alg->labels[i] + "," +
                        alg->labels[j] + ") at module index " + std::to_string(b2));
        }
      }
    }
  return bad;
}

graded_rep make_graded(graded_rep g) {
  auto bad = g.validate();
  if (!bad.empty()) throw error("graded_rep: " + bad.front());
  return g;
}

graded_rep weight_decompose(const representation& r, int h_index) {
  if (h_index < 0 || h_index >= r.alg->dim) throw error("weight_decompose: bad index");
  graded_rep g;
  g.alg = r.alg;
  g.h_index = h_index;
  g.algebra_weights.assign(r.alg->dim, 0);
  for (int j = 0; j < r.alg->dim; ++j) {
    svec b = r.alg->bracket(h_index, j);
    if (b.zero()) continue;
    if (b.nnz() != 1 || b.e.front().first != j || b.e.front().second.get_den() != 1)
      throw error("weight_decompose: ad(h) not integer-diagonal");
    g.algebra_weights[j] = b.e.front().second.get_num().get_si();
  }
  std::vector<long> d;
  if (!diagonal_integer(r.action[h_index], d))
    throw error("weight_decompose: rho(h) not integer-diagonal");
  g.module_dim = r.module_dim;
  g.action = r.action;
  g.module_weights = d;
  g.module_labels = r.module_labels;
  long lo = 0, hi = 0;
  if (!d.empty()) {
    lo = *std::min_element(d.begin(), d.end());
    hi = *std::max_element(d.begin(), d.end());
  }
  g.window_lo = lo;
  g.window_hi = hi;
  g.complete_below = g.complete_above = true;
  return make_graded(std::move(g));
}

} // namespace affcoh
