#include "affcoh/ce_cohomology.hpp"

#include <algorithm>

namespace affcoh {

long n_tuples(int n, int p) {
  if (p < 0 || p > n) return 0;
  long r = 1;
  for (int i = 0; i < p; ++i) r = r * (n - i) / (i + 1);
  return r;
}

long tuple_rank(int n, const std::vector<int>& t) {
  /* lex rank of a strictly increasing tuple */
  long r = 0;
  int p = (int)t.size();
  int prev = -1;
  for (int s = 0; s < p; ++s) {
    for (int v = prev + 1; v < t[s]; ++v) r += n_tuples(n - v - 1, p - s - 1);
    prev = t[s];
  }
  return r;
}

std::vector<int> tuple_unrank(int n, int p, long r) {
  std::vector<int> t(p);
  int prev = -1;
  for (int s = 0; s < p; ++s) {
    int v = prev + 1;
    while (true) {
      long c = n_tuples(n - v - 1, p - s - 1);
      if (r < c) break;
      r -= c;
      ++v;
    }
    t[s] = v;
    prev = v;
  }
  return t;
}

namespace {

struct grading_view {
  lie_ptr alg;
  const std::vector<sparse_matrix>* action;
  std::vector<long> alg_w, mod_w;
  std::function<bool(long)> representable;
  std::function<bool(long)> in_window;
  long window_lo = 0, window_hi = 0;
};

cochain_complex build(const grading_view& gv, long w, int p_max, exec ex) {
  const int n = gv.alg->dim;
  const int nm = (int)gv.mod_w.size();
  cochain_complex cc;
  cc.alg = gv.alg;
  cc.module_dim = nm;
  cc.sector_weight = w;
  cc.p_max = p_max;
  cc.basis.resize(p_max + 2);

  /* module indices per weight, ascending index order */
  std::map<long, std::vector<int>> by_weight;
  for (int b = 0; b < nm; ++b) by_weight[gv.mod_w[b]].push_back(b);

  for (int p = 0; p <= p_max + 1; ++p) {
    cplx_basis& cb = cc.basis[p];
    long nt = n_tuples(n, p);
    for (long tr = 0; tr < nt; ++tr) {
      auto t = tuple_unrank(n, p, tr);
      long s = 0;
      for (int i : t) s += gv.alg_w[i];
      long need = w + s;
      if (!gv.in_window(need)) {
        if (!gv.representable(need))
          throw error("weight window too narrow: degree-" + std::to_string(p) +
                      " cochains need module weight " + std::to_string(need) +
                      ", window is [" + std::to_string(gv.window_lo) + "," +
                      std::to_string(gv.window_hi) + "]");
        continue; /* genuinely empty sector */
      }
      auto it = by_weight.find(need);
      if (it == by_weight.end()) continue;
      for (int b : it->second) {
        cb.idx[{tr, b}] = (int)cb.elems.size();
        cb.elems.emplace_back(tr, b);
      }
    }
  }

  /* transposed action matrices: column b of action[j] = actT[j].row[b] */
  std::vector<sparse_matrix> actT;
  actT.reserve(n);
  for (int j = 0; j < n; ++j) actT.push_back((*gv.action)[j].transpose());

  cc.delta.resize(p_max + 1);
  for (int p = 0; p <= p_max; ++p) {
    const cplx_basis& src = cc.basis[p];
    const cplx_basis& dst = cc.basis[p + 1];
    std::vector<std::vector<sparse_matrix::triplet>> per_col(src.dim());
    std::vector<char> col_bad(src.dim(), 0);
    auto col_job = [&](int ci) {
      auto& out = per_col[ci];
      auto [trk, b] = src.elems[ci];
      auto t = tuple_unrank(n, p, trk);
      std::vector<char> in_t(n, 0);
      for (int i : t) in_t[i] = 1;
      /* action terms: j joins the tuple */
      for (int j = 0; j < n; ++j) {
        if (in_t[j]) continue;
        std::vector<int> jt = t;
        jt.insert(std::upper_bound(jt.begin(), jt.end(), j), j);
        int pos = (int)(std::lower_bound(jt.begin(), jt.end(), j) - jt.begin());
        long jr = tuple_rank(n, jt);
        int sgn = (pos % 2 == 0) ? 1 : -1;
        for (const auto& [bp, v] : actT[j].row[b].e) {
          int ri = dst.index_of(jr, bp);
          if (ri < 0) { col_bad[ci] = 1; return; }
          out.emplace_back(ri, ci, sgn > 0 ? v : -v);
        }
      }
      /* bracket terms: an element of the tuple splits into a bracket pair */
      for (int t0 = 0; t0 < p; ++t0) {
        int k = t[t0];
        std::vector<int> rest = t;
        rest.erase(rest.begin() + t0);
        std::vector<char> in_rest(n, 0);
        for (int i : rest) in_rest[i] = 1;
        for (const auto& [uv, cvec] : gv.alg->table) {
          auto [u, v] = uv;
          if (in_rest[u] || in_rest[v]) continue;
          rational c = cvec.at(k);
          if (c == 0) continue;
          std::vector<int> jt = rest;
          jt.insert(std::upper_bound(jt.begin(), jt.end(), u), u);
          jt.insert(std::upper_bound(jt.begin(), jt.end(), v), v);
          int lu = (int)(std::lower_bound(jt.begin(), jt.end(), u) - jt.begin());
          int lv = (int)(std::lower_bound(jt.begin(), jt.end(), v) - jt.begin());
          long jr = tuple_rank(n, jt);
          int sgn = ((lu + lv + t0) % 2 == 0) ? 1 : -1;
          int ri = dst.index_of(jr, b);
          if (ri < 0) { col_bad[ci] = 1; return; }
          out.emplace_back(ri, ci, sgn > 0 ? c : -c);
        }
      }
    };
    if (ex == exec::openmp) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
      for (int ci = 0; ci < src.dim(); ++ci) col_job(ci);
    } else {
      for (int ci = 0; ci < src.dim(); ++ci) col_job(ci);
    }
    for (char bflag : col_bad)
      if (bflag) throw error("internal: coboundary row escaped the sector");
    std::vector<sparse_matrix::triplet> all;
    for (auto& pc : per_col)
      for (auto& tr3 : pc) all.push_back(std::move(tr3));
    cc.delta[p] = sparse_matrix::from_triplets(dst.dim(), src.dim(), all);
  }
  return cc;
}

} // namespace

cochain_complex full_complex(const representation& r, int p_max, exec ex) {
  grading_view gv;
  gv.alg = r.alg;
  gv.action = &r.action;
  gv.alg_w.assign(r.alg->dim, 0);
  gv.mod_w.assign(r.module_dim, 0);
  gv.representable = [](long) { return true; };
  gv.in_window = [](long w) { return w == 0; };
  gv.window_lo = gv.window_hi = 0;
  return build(gv, 0, p_max, ex);
}

cochain_complex weight_sector_subcomplex(const graded_rep& g, long w, int p_max, exec ex) {
  grading_view gv;
  gv.alg = g.alg;
  gv.action = &g.action;
  gv.alg_w = g.algebra_weights;
  gv.mod_w = g.module_weights;
  gv.representable = [&g](long x) { return g.representable(x); };
  gv.in_window = [&g](long x) { return g.in_window(x); };
  gv.window_lo = g.window_lo;
  gv.window_hi = g.window_hi;
  return build(gv, w, p_max, ex);
}

cochain_complex weight_zero_subcomplex(const graded_rep& g, int p_max, exec ex) {
  return weight_sector_subcomplex(g, 0, p_max, ex);
}

cochain coboundary(const cochain_complex& c, const cochain& x) {
  if (x.degree > c.p_max) throw error("coboundary: degree beyond built complex");
  return cochain{x.degree + 1, c.delta[x.degree].apply(x.coords)};
}

cohomology_result cohomology(const cochain_complex& c, int p, exec ex) {
  if (p > c.p_max) throw error("cohomology: degree beyond built complex");
  cohomology_result res;
  res.degree = p;
  incremental_rref ker_rr(c.dim(p));
  ker_rr.add_rows(c.delta[p].row, ex);
  auto ker = ker_rr.kernel_basis(); /* canonical reduced basis of cocycles */
  res.cocycle_rank = (int)ker.size();

  incremental_rref im_rr(c.dim(p));
  if (p > 0) {
    sparse_matrix bt = c.delta[p - 1].transpose();
    im_rr.add_rows(bt.row, ex);
  }
  res.boundary_rank = im_rr.rank();
  res.dimension = res.cocycle_rank - res.boundary_rank;

  /* canonical completion: kernel rows whose pivot is not a boundary pivot,
   * reduced modulo the boundary space */
  incremental_rref ker_canon(c.dim(p));
  for (const auto& v : ker) ker_canon.add_row(v);
  auto bpiv = im_rr.pivot_cols();
  std::vector<char> is_b(c.dim(p), 0);
  for (int pc : bpiv) is_b[pc] = 1;
  for (const auto& row : ker_canon.rows()) {
    int pc = row.e.front().first;
    if (is_b[pc]) continue;
    svec rep = im_rr.residual(row);
    if (rep.zero()) throw error("internal: boundary pivot bookkeeping");
    res.representatives.push_back(cochain{p, rep});
  }
  if ((int)res.representatives.size() != res.dimension)
    throw error("internal: representative count mismatch");
  return res;
}

cohomology_result cohomology(const representation& r, int p, exec ex) {
  auto cc = full_complex(r, p, ex);
  return cohomology(cc, p, ex);
}

std::optional<cochain> is_coboundary(const cochain_complex& c, const cochain& x, exec ex) {
  if (!coboundary(c, x).coords.zero()) throw error("is_coboundary: not a cocycle");
  if (x.degree == 0) {
    if (x.coords.zero()) return cochain{0, svec{}}; /* only 0 bounds in degree 0 */
    return std::nullopt;
  }
  auto s = solve(c.delta[x.degree - 1], x.coords, ex);
  if (!s) return std::nullopt;
  return cochain{x.degree - 1, *s};
}

svec eval_cochain(const cochain_complex& c, const cochain& x, const std::vector<int>& t) {
  if ((int)t.size() != x.degree) throw error("eval_cochain: arity");
  long tr = tuple_rank(c.alg->dim, t);
  svec v;
  for (const auto& [i, val] : x.coords.e) {
    auto [etr, b] = c.basis[x.degree].elems[i];
    if (etr == tr) v.set(b, val);
  }
  return v;
}

cochain cochain_from_values(const cochain_complex& c, int p,
                            const std::function<svec(const std::vector<int>&)>& val) {
  cochain x;
  x.degree = p;
  const cplx_basis& cb = c.basis[p];
  long cur = -1;
  svec cache;
  for (int i = 0; i < cb.dim(); ++i) {
    auto [tr, b] = cb.elems[i];
    if (tr != cur) {
      cache = val(tuple_unrank(c.alg->dim, p, tr));
      cur = tr;
    }
    rational v = cache.at(b);
    if (v != 0) x.coords.push(i, v);
  }
  /* any value outside the stored sector is an error the caller must avoid */
  return x;
}

svec class_coordinates(const cochain_complex& c, const std::vector<cochain>& reps,
                       const cochain& z, exec ex) {
  int p = z.degree;
  if (p < 0 || p > c.p_max) throw error("class_coordinates: degree out of range");
  if (!coboundary(c, z).coords.zero()) throw error("class_coordinates: not a cocycle");
  int h = (int)reps.size();
  int nb = p >= 1 ? c.dim(p - 1) : 0;
  sparse_matrix m(c.dim(p), h + nb);
  for (int k = 0; k < h; ++k) {
    if (reps[k].degree != p) throw error("class_coordinates: degree mismatch");
    for (const auto& [q, v] : reps[k].coords.e) m.set(q, k, v);
  }
  if (p >= 1)
    for (int q = 0; q < c.dim(p); ++q)
      for (const auto& [j, v] : c.delta[p - 1].row[q].e) m.set(q, h + j, v);
  auto x = solve(m, z.coords, ex);
  if (!x) throw error("class_coordinates: cocycle outside the representative span");
  svec lam;
  for (const auto& [i, v] : x->e)
    if (i < h) lam.set(i, v);
  return lam;
}

} // namespace affcoh
