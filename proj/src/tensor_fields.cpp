#include "affcoh/tensor_fields.hpp"

#include <algorithm>
#include <sstream>

namespace affcoh {

int expo_deg(const expo& a) {
  int d = 0;
  for (int e : a) d += e;
  return d;
}

static void expos_rec(int m, int pos, int left, expo& cur, std::vector<expo>& out) {
  if (pos == m - 1) {
    cur[pos] = left;
    out.push_back(cur);
    return;
  }
  for (int e = left; e >= 0; --e) {
    cur[pos] = e;
    expos_rec(m, pos + 1, left - e, cur, out);
  }
}

std::vector<expo> expos(int m, int d) {
  std::vector<expo> out;
  expo cur(m, 0);
  expos_rec(m, 0, d, cur, out);
  return out;
}

std::vector<expo> expos_upto(int m, int d) {
  std::vector<expo> out;
  for (int k = 0; k <= d; ++k) {
    auto e = expos(m, k);
    out.insert(out.end(), e.begin(), e.end());
  }
  return out;
}

static void multisets_rec(int m, int p, int start, std::vector<int>& cur,
                          std::vector<std::vector<int>>& out) {
  if ((int)cur.size() == p) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < m; ++i) {
    cur.push_back(i);
    multisets_rec(m, p, i, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> multisets(int m, int p) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  multisets_rec(m, p, 0, cur, out);
  return out;
}

/* ---- polynomials ---- */

int poly::degree() const {
  int d = -1;
  for (auto& [a, v] : c) d = std::max(d, expo_deg(a));
  return d;
}

rational poly::at(const expo& a) const {
  auto it = c.find(a);
  return it == c.end() ? rational(0) : it->second;
}

void poly::add(const expo& a, const rational& v) {
  if ((int)a.size() != m) throw error("exponent length mismatch");
  if (sgn(v) == 0) return;
  auto [it, fresh] = c.emplace(a, v);
  if (!fresh) {
    it->second += v;
    if (sgn(it->second) == 0) c.erase(it);
  }
}

poly p_mono(int m, const expo& a, const rational& v) {
  poly p(m);
  p.add(a, v);
  return p;
}

poly p_const(int m, const rational& v) { return p_mono(m, expo(m, 0), v); }

poly p_var(int m, int i) {
  expo a(m, 0);
  a[i] = 1;
  return p_mono(m, a);
}

poly operator+(const poly& a, const poly& b) {
  if (a.m != b.m) throw error("dimension mismatch");
  poly out = a;
  for (auto& [e, v] : b.c) out.add(e, v);
  return out;
}

poly operator-(const poly& a, const poly& b) {
  if (a.m != b.m) throw error("dimension mismatch");
  poly out = a;
  for (auto& [e, v] : b.c) out.add(e, -v);
  return out;
}

poly operator*(const poly& a, const poly& b) {
  if (a.m != b.m) throw error("dimension mismatch");
  poly out(a.m);
  for (auto& [ea, va] : a.c)
    for (auto& [eb, vb] : b.c) {
      expo e = ea;
      for (int i = 0; i < a.m; ++i) e[i] += eb[i];
      out.add(e, va * vb);
    }
  return out;
}

poly operator*(const rational& s, const poly& a) {
  poly out(a.m);
  if (sgn(s) == 0) return out;
  for (auto& [e, v] : a.c) out.add(e, s * v);
  return out;
}

poly diff(const poly& a, int u) {
  poly out(a.m);
  for (auto& [e, v] : a.c) {
    if (e[u] == 0) continue;
    expo d = e;
    d[u] -= 1;
    out.add(d, rational(e[u]) * v);
  }
  return out;
}

static std::string mono_str(const expo& a) {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < (int)a.size(); ++i) {
    if (a[i] == 0) continue;
    if (!first) os << "*";
    os << "x" << (i + 1);
    if (a[i] > 1) os << "^" << a[i];
    first = false;
  }
  return first ? "1" : os.str();
}

std::string poly_str(const poly& a) {
  if (a.zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [e, v] : a.c) {
    if (!first) os << " + ";
    os << rat_str(v);
    if (expo_deg(e) > 0) os << "*" << mono_str(e);
    first = false;
  }
  return os.str();
}

/* ---- fields ---- */

poly vfield::at(int i) const {
  auto it = comp.find(i);
  return it == comp.end() ? poly(m) : it->second;
}

void vfield::add(int i, const poly& p) {
  if (p.m != m) throw error("dimension mismatch");
  if (p.zero()) return;
  auto it = comp.find(i);
  if (it == comp.end()) {
    comp.emplace(i, p);
    return;
  }
  it->second = it->second + p;
  if (it->second.zero()) comp.erase(it);
}

poly oneform::at(int i) const {
  auto it = comp.find(i);
  return it == comp.end() ? poly(m) : it->second;
}

void oneform::add(int i, const poly& p) {
  if (p.m != m) throw error("dimension mismatch");
  if (p.zero()) return;
  auto it = comp.find(i);
  if (it == comp.end()) {
    comp.emplace(i, p);
    return;
  }
  it->second = it->second + p;
  if (it->second.zero()) comp.erase(it);
}

poly s12::at(int k, int i, int j) const {
  if (j < i) std::swap(i, j);
  auto it = comp.find({k, i, j});
  return it == comp.end() ? poly(m) : it->second;
}

void s12::add(int k, int i, int j, const poly& p) {
  if (p.m != m) throw error("dimension mismatch");
  if (p.zero()) return;
  if (j < i) std::swap(i, j);
  std::array<int, 3> key{k, i, j};
  auto it = comp.find(key);
  if (it == comp.end()) {
    comp.emplace(key, p);
    return;
  }
  it->second = it->second + p;
  if (it->second.zero()) comp.erase(it);
}

poly contra::at(std::vector<int> idx) const {
  if ((int)idx.size() != p) throw error("index length mismatch");
  std::sort(idx.begin(), idx.end());
  auto it = comp.find(idx);
  return it == comp.end() ? poly(m) : it->second;
}

void contra::add(std::vector<int> idx, const poly& q) {
  if ((int)idx.size() != p) throw error("index length mismatch");
  if (q.m != m) throw error("dimension mismatch");
  if (q.zero()) return;
  std::sort(idx.begin(), idx.end());
  auto it = comp.find(idx);
  if (it == comp.end()) {
    comp.emplace(std::move(idx), q);
    return;
  }
  it->second = it->second + q;
  if (it->second.zero()) comp.erase(it);
}

vfield v_mono(int m, int i, const expo& a, const rational& v) {
  vfield x(m);
  x.add(i, p_mono(m, a, v));
  return x;
}

vfield coord_field(int m, int i) { return v_mono(m, i, expo(m, 0)); }

vfield euler_field(int m) {
  vfield x(m);
  for (int i = 0; i < m; ++i) x.add(i, p_var(m, i));
  return x;
}

vfield operator+(const vfield& a, const vfield& b) {
  if (a.m != b.m) throw error("dimension mismatch");
  vfield out = a;
  for (auto& [i, p] : b.comp) out.add(i, p);
  return out;
}

vfield operator-(const vfield& a, const vfield& b) {
  return a + rational(-1) * b;
}

vfield operator*(const rational& s, const vfield& a) {
  vfield out(a.m);
  for (auto& [i, p] : a.comp) out.add(i, s * p);
  return out;
}

vfield operator*(const poly& f, const vfield& a) {
  if (f.m != a.m) throw error("dimension mismatch");
  vfield out(a.m);
  for (auto& [i, p] : a.comp) out.add(i, f * p);
  return out;
}

oneform operator+(const oneform& a, const oneform& b) {
  if (a.m != b.m) throw error("dimension mismatch");
  oneform out = a;
  for (auto& [i, p] : b.comp) out.add(i, p);
  return out;
}

oneform operator-(const oneform& a, const oneform& b) {
  return a + rational(-1) * b;
}

oneform operator*(const rational& s, const oneform& a) {
  oneform out(a.m);
  for (auto& [i, p] : a.comp) out.add(i, s * p);
  return out;
}

oneform operator*(const poly& f, const oneform& a) {
  if (f.m != a.m) throw error("dimension mismatch");
  oneform out(a.m);
  for (auto& [i, p] : a.comp) out.add(i, f * p);
  return out;
}

s12 operator+(const s12& a, const s12& b) {
  if (a.m != b.m) throw error("dimension mismatch");
  s12 out = a;
  for (auto& [k, p] : b.comp) out.add(k[0], k[1], k[2], p);
  return out;
}

s12 operator-(const s12& a, const s12& b) { return a + rational(-1) * b; }

s12 operator*(const rational& s, const s12& a) {
  s12 out(a.m);
  for (auto& [k, p] : a.comp) out.add(k[0], k[1], k[2], s * p);
  return out;
}

s12 operator*(const poly& f, const s12& a) {
  if (f.m != a.m) throw error("dimension mismatch");
  s12 out(a.m);
  for (auto& [k, p] : a.comp) out.add(k[0], k[1], k[2], f * p);
  return out;
}

contra operator+(const contra& a, const contra& b) {
  if (a.m != b.m || a.p != b.p) throw error("dimension mismatch");
  contra out = a;
  for (auto& [k, q] : b.comp) out.add(k, q);
  return out;
}

contra operator-(const contra& a, const contra& b) {
  return a + rational(-1) * b;
}

contra operator*(const rational& s, const contra& a) {
  contra out(a.m, a.p);
  for (auto& [k, q] : a.comp) out.add(k, s * q);
  return out;
}

/* ---- derivatives ---- */

poly apply(const vfield& x, const poly& f) {
  if (x.m != f.m) throw error("dimension mismatch");
  poly out(f.m);
  for (auto& [i, p] : x.comp) out = out + p * diff(f, i);
  return out;
}

vfield bracket(const vfield& x, const vfield& y) {
  if (x.m != y.m) throw error("dimension mismatch");
  vfield out(x.m);
  for (int i = 0; i < x.m; ++i)
    out.add(i, apply(x, y.at(i)) - apply(y, x.at(i)));
  return out;
}

s12 lie(const vfield& x, const s12& s) {
  if (x.m != s.m) throw error("dimension mismatch");
  int m = x.m;
  s12 out(m);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        poly t = apply(x, s.at(k, i, j));
        for (int u = 0; u < m; ++u) {
          t = t + diff(x.at(u), i) * s.at(k, u, j);
          t = t + diff(x.at(u), j) * s.at(k, i, u);
          t = t - diff(x.at(k), u) * s.at(u, i, j);
        }
        out.add(k, i, j, t);
      }
  return out;
}

oneform lie(const vfield& x, const oneform& a) {
  if (x.m != a.m) throw error("dimension mismatch");
  oneform out(x.m);
  for (int i = 0; i < x.m; ++i) {
    poly t = apply(x, a.at(i));
    for (int u = 0; u < x.m; ++u) t = t + diff(x.at(u), i) * a.at(u);
    out.add(i, t);
  }
  return out;
}

contra lie(const vfield& x, const contra& q) {
  if (x.m != q.m) throw error("dimension mismatch");
  contra out(q.m, q.p);
  for (auto& key : multisets(q.m, q.p)) {
    poly t = apply(x, q.at(key));
    for (int s = 0; s < q.p; ++s)
      for (int u = 0; u < q.m; ++u) {
        std::vector<int> rep = key;
        rep[s] = u;
        t = t - diff(x.at(key[s]), u) * q.at(rep);
      }
    out.add(key, t);
  }
  return out;
}

/* ---- trace / projection ---- */

oneform trace(const s12& s) {
  oneform out(s.m);
  for (int j = 0; j < s.m; ++j) {
    poly t(s.m);
    for (int u = 0; u < s.m; ++u) t = t + s.at(u, u, j);
    out.add(j, t);
  }
  return out;
}

s12 alpha1(const oneform& a) {
  s12 out(a.m);
  for (int i = 0; i < a.m; ++i)
    for (int j = i; j < a.m; ++j) {
      out.add(j, i, j, a.at(i));
      out.add(i, i, j, a.at(j));
    }
  return out;
}

s12 pr(const s12& s) {
  return s - rational(1, s.m + 1) * alpha1(trace(s));
}

/* ---- connections ---- */

vfield cov(const connection& n, const vfield& y, const vfield& z) {
  if (n.m != y.m || n.m != z.m) throw error("dimension mismatch");
  int m = n.m;
  vfield out(m);
  for (int k = 0; k < m; ++k) {
    poly t = apply(y, z.at(k));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        t = t + n.gamma.at(k, i, j) * y.at(i) * z.at(j);
    out.add(k, t);
  }
  return out;
}

s12 lie_conn(const vfield& x, const connection& n) {
  if (x.m != n.m) throw error("dimension mismatch");
  int m = x.m;
  s12 out(m);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        poly t = diff(diff(x.at(k), i), j) + apply(x, n.gamma.at(k, i, j));
        for (int u = 0; u < m; ++u) {
          t = t + diff(x.at(u), i) * n.gamma.at(k, u, j);
          t = t + diff(x.at(u), j) * n.gamma.at(k, i, u);
          t = t - diff(x.at(k), u) * n.gamma.at(u, i, j);
        }
        out.add(k, i, j, t);
      }
  return out;
}

s12 lpr(const vfield& x, const connection& n) { return pr(lie_conn(x, n)); }

s12 ltr(const vfield& x, const connection& n) {
  return alpha1(trace(lie_conn(x, n)));
}

poly divergence(const vfield& x) {
  poly out(x.m);
  for (auto& [i, p] : x.comp) out = out + diff(p, i);
  return out;
}

s12 kappa(const rational& a, const rational& b, const vfield& x, const vfield& y) {
  if (x.m != y.m) throw error("dimension mismatch");
  connection flat(x.m);
  poly dx = divergence(x), dy = divergence(y);
  s12 lx = lie_conn(x, flat), ly = lie_conn(y, flat);
  return a * (dx * alpha1(trace(ly)) - dy * alpha1(trace(lx))) +
         b * (dx * pr(ly) - dy * pr(lx));
}

contra contract0(const s12& s, const contra& q) {
  if (s.m != q.m) throw error("dimension mismatch");
  if (q.p != 2) throw error("contraction needs a degree-2 argument");
  contra out(s.m, 1);
  for (int k = 0; k < s.m; ++k) {
    poly t(s.m);
    for (int i = 0; i < s.m; ++i)
      for (int j = 0; j < s.m; ++j) t = t + s.at(k, i, j) * q.at({i, j});
    out.add({k}, t);
  }
  return out;
}

contra d_flat(const contra& q) {
  if (q.p != 2) throw error("contraction needs a degree-2 argument");
  contra out(q.m, 1);
  for (int i = 0; i < q.m; ++i) {
    poly t(q.m);
    for (int j = 0; j < q.m; ++j) t = t + diff(q.at({j, i}), j);
    out.add({i}, t);
  }
  return out;
}

bool proj_equivalent(const connection& n1, const connection& n2) {
  if (n1.m != n2.m) throw error("dimension mismatch");
  return pr(n2.gamma - n1.gamma).zero();
}

/* ---- projective realization ---- */

sl_realization sl_projective(int m) {
  if (m < 2) throw error("projective realization needs m > 1");
  sl_realization r;
  r.m = m;
  std::vector<std::string> labels;
  expo z(m, 0);
  for (int i = 0; i < m; ++i) {
    r.gen.push_back(coord_field(m, i));
    labels.push_back("d" + std::to_string(i + 1));
    r.weights.push_back(-1);
  }
  r.h_index = (int)r.gen.size();
  r.gen.push_back(euler_field(m));
  labels.push_back("E");
  r.weights.push_back(0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == 0 && j == 0) continue; /* x1 d1 is E minus the other x^u d_u */
      expo a = z;
      a[j] = 1;
      r.gen.push_back(v_mono(m, i, a));
      labels.push_back("x" + std::to_string(j + 1) + "d" + std::to_string(i + 1));
      r.weights.push_back(0);
    }
  for (int a = 0; a < m; ++a) {
    r.gen.push_back(p_var(m, a) * euler_field(m));
    labels.push_back("x" + std::to_string(a + 1) + "E");
    r.weights.push_back(1);
  }

  /* structure constants by exact expansion in the monomial field basis */
  std::map<std::pair<int, expo>, int> idx;
  for (int i = 0; i < m; ++i)
    for (auto& a : expos_upto(m, 2)) idx[{i, a}] = (int)idx.size();
  int n = (int)r.gen.size();
  sparse_matrix bm((int)idx.size(), n);
  for (int g = 0; g < n; ++g)
    for (auto& [i, pg] : r.gen[g].comp)
      for (auto& [a, v] : pg.c) bm.set(idx.at({i, a}), g, v);
  std::map<std::pair<int, int>, svec> table;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      vfield w = bracket(r.gen[i], r.gen[j]);
      svec b;
      for (auto& [ci, pg] : w.comp)
        for (auto& [a, v] : pg.c) b.set(idx.at({ci, a}), v);
      auto c = solve(bm, b);
      if (!c) throw error("internal: bracket left the span");
      if (!c->zero()) table[{i, j}] = *c;
    }
  r.alg = make_algebra(std::move(labels), std::move(table));
  return r;
}

/* ---- polynomial S12 sectors as a graded module ---- */

static std::string key_label(int k, int i, int j, const expo& a) {
  std::ostringstream os;
  os << "S" << (k + 1) << "_" << (i + 1) << (j + 1);
  if (expo_deg(a) > 0) os << "*" << mono_str(a);
  return os.str();
}

std::vector<std::tuple<int, int, int, expo>> s12_keys(int m, int d_lo, int d_hi) {
  std::vector<std::tuple<int, int, int, expo>> keys;
  for (int d = d_lo; d <= d_hi; ++d) {
    auto es = expos(m, d);
    for (int k = 0; k < m; ++k)
      for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j)
          for (auto& a : es) keys.push_back({k, i, j, a});
  }
  return keys;
}

svec s12_coords(const s12& s,
                const std::map<std::tuple<int, int, int, expo>, int>& idx) {
  svec v;
  for (auto& [kij, pg] : s.comp)
    for (auto& [a, q] : pg.c) {
      auto it = idx.find({kij[0], kij[1], kij[2], a});
      if (it == idx.end()) throw error("coefficient outside the coordinate range");
      v.set(it->second, q);
    }
  return v;
}

s12 s12_from_coords(int m, const svec& v,
                    const std::vector<std::tuple<int, int, int, expo>>& keys) {
  s12 out(m);
  for (auto& [b, q] : v.e) {
    if (b < 0 || b >= (int)keys.size()) throw error("coordinate out of range");
    auto& [k, i, j, a] = keys[b];
    out.add(k, i, j, p_mono(m, a, q));
  }
  return out;
}

s12_module s12_graded_module(int m, long w_lo, long w_hi, bool trace_free) {
  long dmin = std::max(0L, w_lo - 1), dmax = w_hi - 1;
  if (dmax < dmin) throw error("weight window excludes every sector");
  s12_module md;
  md.sl = sl_projective(m);
  md.trace_free = trace_free;
  md.keys = s12_keys(m, (int)dmin, (int)dmax);
  for (int b = 0; b < (int)md.keys.size(); ++b) md.key_idx[md.keys[b]] = b;
  int nfull = (int)md.keys.size();
  int n_gen = (int)md.sl.gen.size();

  /* ambient action; sectors outside the window are dropped */
  std::vector<sparse_matrix> act_full(n_gen, sparse_matrix(nfull, nfull));
  for (int g = 0; g < n_gen; ++g)
    for (int b = 0; b < nfull; ++b) {
      auto& [k, i, j, a] = md.keys[b];
      s12 e(m);
      e.add(k, i, j, p_mono(m, a));
      s12 w = lie(md.sl.gen[g], e);
      for (auto& [kij, pg] : w.comp)
        for (auto& [aa, v] : pg.c) {
          auto it = md.key_idx.find({kij[0], kij[1], kij[2], aa});
          if (it != md.key_idx.end()) act_full[g].set(it->second, b, v);
        }
    }

  std::vector<long> wts(nfull);
  std::vector<std::string> labels(nfull);
  for (int b = 0; b < nfull; ++b) {
    auto& [k, i, j, a] = md.keys[b];
    wts[b] = expo_deg(a) + 1;
    labels[b] = key_label(k, i, j, a);
  }

  graded_rep gr;
  gr.alg = md.sl.alg;
  gr.h_index = md.sl.h_index;
  gr.algebra_weights = md.sl.weights;
  gr.window_lo = w_lo;
  gr.window_hi = w_hi;
  gr.complete_below = (w_lo <= 1); /* nothing lives below weight 1 */
  gr.complete_above = false;

  if (!trace_free) {
    gr.module_dim = nfull;
    gr.action = std::move(act_full);
    gr.module_weights = wts;
    gr.module_labels = labels;
    md.rep = make_graded(std::move(gr));
    return md;
  }

  /* kernel of the trace, sector by sector */
  std::map<std::pair<int, expo>, int> oidx;
  for (long d = dmin; d <= dmax; ++d)
    for (int i = 0; i < m; ++i)
      for (auto& a : expos(m, (int)d)) oidx[{i, a}] = (int)oidx.size();
  sparse_matrix tmat((int)oidx.size(), nfull);
  for (int b = 0; b < nfull; ++b) {
    auto& [k, i, j, a] = md.keys[b];
    s12 e(m);
    e.add(k, i, j, p_mono(m, a));
    oneform t = trace(e);
    for (auto& [ci, pg] : t.comp)
      for (auto& [aa, v] : pg.c) tmat.set(oidx.at({ci, aa}), b, v);
  }
  incremental_rref rr(nfull);
  rr.add_rows(tmat.row, default_exec());
  auto kb = rr.kernel_basis();
  std::vector<char> is_pivot(nfull, 0);
  for (int pc : rr.pivot_cols()) is_pivot[pc] = 1;
  for (int f = 0; f < nfull; ++f)
    if (!is_pivot[f]) md.tf_cols.push_back(f);
  int nt = (int)kb.size();
  if ((int)md.tf_cols.size() != nt) throw error("internal: kernel basis misaligned");
  md.tf = sparse_matrix(nt, nfull);
  md.tf.row = kb;
  for (int t = 0; t < nt; ++t)
    if (!(kb[t].at(md.tf_cols[t]) == rational(1)))
      throw error("internal: kernel basis misaligned");

  std::vector<sparse_matrix> act_tf(n_gen, sparse_matrix(nt, nt));
  for (int g = 0; g < n_gen; ++g)
    for (int t = 0; t < nt; ++t) {
      svec w = act_full[g].apply(md.tf.row[t]);
      svec c;
      for (int t2 = 0; t2 < nt; ++t2) {
        rational v = w.at(md.tf_cols[t2]);
        if (sgn(v) != 0) c.set(t2, v);
      }
      svec recon;
      for (auto& [t2, v] : c.e) recon.add_scaled(md.tf.row[t2], v);
      if (!(recon == w)) throw error("internal: action left the trace-free part");
      for (auto& [t2, v] : c.e) act_tf[g].set(t2, t, v);
    }

  gr.module_dim = nt;
  gr.action = std::move(act_tf);
  gr.module_weights.resize(nt);
  gr.module_labels.resize(nt);
  for (int t = 0; t < nt; ++t) {
    gr.module_weights[t] = wts[md.tf_cols[t]];
    gr.module_labels[t] = labels[md.tf_cols[t]];
  }
  md.rep = make_graded(std::move(gr));
  return md;
}

svec s12_module::to_coords(const s12& s) const {
  if (s.m != sl.m) throw error("dimension mismatch");
  svec full;
  for (auto& [kij, pg] : s.comp)
    for (auto& [a, v] : pg.c) {
      auto it = key_idx.find({kij[0], kij[1], kij[2], a});
      if (it == key_idx.end()) throw error("tensor outside the stored weight window");
      full.set(it->second, v);
    }
  if (!trace_free) return full;
  svec c;
  for (int t = 0; t < (int)tf_cols.size(); ++t) {
    rational v = full.at(tf_cols[t]);
    if (sgn(v) != 0) c.set(t, v);
  }
  svec recon;
  for (auto& [t, v] : c.e) recon.add_scaled(tf.row[t], v);
  if (!(recon == full)) throw error("tensor has a trace component");
  return c;
}

s12 s12_module::from_coords(const svec& v) const {
  svec full = v;
  if (trace_free) {
    full = svec{};
    for (auto& [t, s] : v.e) {
      if (t < 0 || t >= (int)tf.row.size()) throw error("coordinate out of range");
      full.add_scaled(tf.row[t], s);
    }
  }
  return s12_from_coords(sl.m, full, keys);
}

} // namespace affcoh
